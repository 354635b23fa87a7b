#include "cutting_forge/cell.hpp"

namespace cutting_forge {

std::string_view to_string(CellKind kind) {
  switch (kind) {
    case CellKind::Point: return "point";
    case CellKind::VerticalOnBreakLine: return "vert_u";
    case CellKind::VerticalExtra: return "vert_e";
    case CellKind::Arc: return "arc";
    case CellKind::TwoDim: return "twodim";
  }
  return "unknown";
}

CellKind Cell::kind() const {
  struct Visitor {
    CellKind operator()(const PointCell&) const { return CellKind::Point; }
    CellKind operator()(const VerticalCell& v) const {
      return v.on_break_line ? CellKind::VerticalOnBreakLine : CellKind::VerticalExtra;
    }
    CellKind operator()(const ArcCell&) const { return CellKind::Arc; }
    CellKind operator()(const TwoDimCell&) const { return CellKind::TwoDim; }
  };
  return std::visit(Visitor{}, shape);
}

Region Cell::region() const {
  struct Visitor {
    Region operator()(const PointCell& c) const {
      Slice s;
      s.at = c.p.x2;
      s.is_point = true;
      s.point = c.p.x1;
      s.lower = Ext(c.p.x1);
      s.upper = Ext(c.p.x1);
      return s;
    }
    Region operator()(const VerticalCell& c) const {
      Slice s;
      s.at = c.at;
      s.lower = c.lower;
      s.upper = c.upper;
      return s;
    }
    Region operator()(const ArcCell& c) const {
      Band b;
      b.left = c.left;
      b.right = c.right;
      b.carriers.push_back(c.carrier.poly());
      return b;
    }
    Region operator()(const TwoDimCell& c) const {
      Band b;
      b.left = c.left;
      b.right = c.right;
      if (c.bottom) b.lower.push_back(c.bottom->poly());
      if (c.top) b.upper.push_back(c.top->poly());
      b.ordered_bounds = true;
      return b;
    }
  };
  return std::visit(Visitor{}, shape);
}

}  // namespace cutting_forge
