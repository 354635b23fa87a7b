#include "cutting_forge/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "cutting_forge/fit.hpp"
#include "cutting_forge/random.hpp"

namespace cutting_forge {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

bool less_qe(const QuadExt& x, const QuadExt& y) { return qe_cmp(x, y) == Ordering::LT; }

// Sign of a nonzero polynomial just right of x.
int right_sign(const QuadPoly& p, const QuadExt& x) {
  int s = p(x).sign();
  if (s != 0) return s;
  s = (QuadExt(p.c1) + x * Rat(2 * p.c2)).sign();
  if (s != 0) return s;
  return sgn(p.c2);
}

// For distinct curves through a common point at x: a lies below b just right
// of x.
bool slope_less(const QuadPoly& a, const QuadPoly& b, const QuadExt& x) {
  const int dc2 = cmp(a.c2, b.c2);
  if (dc2 == 0) return cmp(a.c1, b.c1) < 0;
  const int s = (QuadExt(Rat(a.c1 - b.c1)) + x * Rat(2 * (a.c2 - b.c2))).sign();
  if (s != 0) return s < 0;
  return dc2 < 0;
}

// Sign of a nonzero polynomial as t goes to -inf.
int sign_at_neg_inf(const QuadPoly& p) {
  if (sgn(p.c2) != 0) return sgn(p.c2);
  if (sgn(p.c1) != 0) return -sgn(p.c1);
  return sgn(p.c0);
}

struct RawPoint {
  QuadExt x2;
  QuadExt x1;
  std::uint32_t a;
  std::uint32_t b;
};

struct PointRec {
  QuadExt x2;
  QuadExt x1;
  std::vector<std::uint32_t> curves;
  std::uint32_t column = 0;  // index into the critical abscissae
};

struct OpenCell {
  std::uint32_t bottom = kNone;
  std::uint32_t top = kNone;
  Ext left = Ext::neg_inf();
  Ext right = Ext::pos_inf();
  LeftWall wall = LeftWall::None;
  std::uint32_t left_point = kNone;
  std::uint32_t right_point = kNone;
};

std::optional<CurveRef> ref(const std::vector<std::shared_ptr<const QuadPoly>>& curves, std::uint32_t c) {
  if (c == kNone) return std::nullopt;
  return CurveRef{c, curves[c]};
}

void push_unique(std::vector<std::size_t>& v, std::size_t x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

// Some curve through the point other than the ones in `avoid`, or kNone.
std::uint32_t partner(const PointRec& p, std::uint32_t avoid1, std::uint32_t avoid2) {
  for (std::uint32_t c : p.curves) {
    if (c != avoid1 && c != avoid2) return c;
  }
  return kNone;
}

}  // namespace

CellComplex::CellComplex(CurveFamily family, std::vector<CurveParam> params)
    : family_(family), params_(family.normalize(std::move(params))) {
  curves_.reserve(params_.size());
  for (const CurveParam& s : params_) curves_.push_back(family_.branch(1, s));
  for (const QuadPoly& p : curves_) shared_curves_.push_back(std::make_shared<const QuadPoly>(p));
  build(Ext::neg_inf(), Ext::pos_inf());
}

CellComplex::CellComplex(CurveFamily family, std::vector<CurveParam> params, const Ext& lo, const Ext& hi)
    : family_(family), params_(family.normalize(std::move(params))), windowed_(true) {
  if (hi < lo) throw Error(ErrorKind::PreconditionViolated, "empty window");
  curves_.reserve(params_.size());
  for (const CurveParam& s : params_) curves_.push_back(family_.branch(1, s));
  for (const QuadPoly& p : curves_) shared_curves_.push_back(std::make_shared<const QuadPoly>(p));
  build(lo, hi);
}

CellComplex build_decomposition(const CurveFamily& family, std::vector<CurveParam> params) {
  return CellComplex(family, std::move(params));
}

void CellComplex::build(const Ext& lo, const Ext& hi) {
  const auto n = static_cast<std::uint32_t>(curves_.size());

  // Intersection points in the window lo <= x2 <= hi, merged when several
  // pairs meet at the same place. The order sample goes right of everything
  // dropped on the left.
  auto below_lo = [&](const QuadExt& x) { return lo.is_finite() ? less_qe(x, lo.value()) : lo.is_pos_inf(); };
  auto above_hi = [&](const QuadExt& x) { return hi.is_finite() ? less_qe(hi.value(), x) : hi.is_neg_inf(); };
  std::optional<QuadExt> dropped_left;
  std::optional<QuadExt> kept_or_right;
  std::vector<RawPoint> raw;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      QuadraticRoots roots = (curves_[i] - curves_[j]).roots();
      for (QuadExt& x : roots.roots) {
        if (below_lo(x)) {
          if (!dropped_left || less_qe(*dropped_left, x)) dropped_left = x;
          continue;
        }
        if (!kept_or_right || less_qe(x, *kept_or_right)) kept_or_right = x;
        if (above_hi(x)) continue;
        QuadExt y = curves_[i](x);
        raw.push_back({std::move(x), std::move(y), i, j});
      }
    }
  }
  const Ext sample_lo = dropped_left ? Ext(*dropped_left) : Ext::neg_inf();
  const Ext sample_hi = kept_or_right ? Ext(*kept_or_right) : Ext::pos_inf();
  std::vector<std::uint32_t> by_x(raw.size());
  for (std::uint32_t i = 0; i < by_x.size(); ++i) by_x[i] = i;
  std::sort(by_x.begin(), by_x.end(), [&](std::uint32_t i, std::uint32_t j) {
    Ordering o = qe_cmp(raw[i].x2, raw[j].x2);
    if (o != Ordering::EQ) return o == Ordering::LT;
    return less_qe(raw[i].x1, raw[j].x1);
  });
  std::vector<PointRec> points;
  for (std::uint32_t i : by_x) {
    RawPoint& r = raw[i];
    if (points.empty() || !(points.back().x2 == r.x2 && points.back().x1 == r.x1)) {
      points.push_back({std::move(r.x2), std::move(r.x1), {}, 0});
    }
    points.back().curves.push_back(r.a);
    points.back().curves.push_back(r.b);
  }
  for (PointRec& p : points) {
    std::sort(p.curves.begin(), p.curves.end());
    p.curves.erase(std::unique(p.curves.begin(), p.curves.end()), p.curves.end());
  }

  // Critical abscissae and, per column, the points on it.
  std::vector<std::vector<std::uint32_t>> column_points;
  for (std::uint32_t k = 0; k < points.size(); ++k) {
    if (critical_.empty() || !(critical_.back() == points[k].x2)) {
      critical_.push_back(points[k].x2);
      column_points.emplace_back();
    }
    points[k].column = static_cast<std::uint32_t>(critical_.size() - 1);
    column_points.back().push_back(k);
  }
  const auto m = static_cast<std::uint32_t>(critical_.size());

  // Per curve: the columns where it meets another curve, and the point there.
  curve_breaks_.assign(n, {});
  std::vector<std::vector<std::uint32_t>> curve_points(n);
  for (std::uint32_t k = 0; k < points.size(); ++k) {
    for (std::uint32_t c : points[k].curves) {
      curve_breaks_[c].push_back(points[k].column);
      curve_points[c].push_back(k);
    }
  }
  auto point_on = [&](std::uint32_t c, std::uint32_t column) -> std::uint32_t {
    const auto& br = curve_breaks_[c];
    auto it = std::lower_bound(br.begin(), br.end(), column);
    if (it == br.end() || *it != column) return kNone;
    return curve_points[c][static_cast<std::size_t>(it - br.begin())];
  };

  std::vector<VerticalCell> verticals;
  std::vector<std::vector<std::size_t>> vertical_defining;
  std::vector<std::vector<std::uint32_t>> column_verticals(m);
  std::vector<OpenCell> open;
  verticals.reserve(2 * points.size());
  vertical_defining.reserve(2 * points.size());
  open.reserve(n + 1 + 2 * points.size());

  std::vector<std::uint32_t> order(n);
  for (std::uint32_t c = 0; c < n; ++c) order[c] = c;
  std::vector<Rat> values(n);
  std::vector<std::uint32_t> pos(n);
  std::vector<std::uint32_t> touched_stamp(n, kNone);
  std::vector<std::uint32_t> gap_cell;

  slab_order_.assign(m + 1, {});
  slab_gap_cell_.assign(m + 1, {});

  {
    // Initial order: left of every intersection point.
    // Left of the window when points were dropped there, so zone walks
    // starting here see all of it.
    const Rat sample = rational_between(sample_lo, sample_lo.is_finite() ? lo : sample_hi);
    if (sample_lo.is_finite()) start_ = sample;
    for (std::uint32_t c = 0; c < n; ++c) values[c] = curves_[c](sample);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  }

  for (std::uint32_t s = 0; s <= m; ++s) {
    if (s > 0) {
      // Only the curves through a point of the previous column change order,
      // and those form one contiguous block per point.
      const QuadExt& x = critical_[s - 1];
      for (std::uint32_t k : column_points[s - 1]) {
        const auto& cs = points[k].curves;
        std::uint32_t lo = n;
        for (std::uint32_t c : cs) lo = std::min(lo, pos[c]);
        std::sort(order.begin() + lo, order.begin() + lo + static_cast<std::ptrdiff_t>(cs.size()),
                  [&](std::uint32_t a, std::uint32_t b) { return slope_less(curves_[a], curves_[b], x); });
      }
    }
    for (std::uint32_t i = 0; i < n; ++i) pos[order[i]] = i;

    std::vector<std::uint32_t> next_gap(n + 1, kNone);
    if (s == 0) {
      for (std::uint32_t g = 0; g <= n; ++g) {
        OpenCell cell;
        cell.bottom = g > 0 ? order[g - 1] : kNone;
        cell.top = g < n ? order[g] : kNone;
        next_gap[g] = static_cast<std::uint32_t>(open.size());
        open.push_back(cell);
      }
    } else {
      const std::uint32_t col = s - 1;
      auto touched = [&](std::uint32_t c) { return c != kNone && touched_stamp[c] == col; };
      for (std::uint32_t g = 0; g <= n; ++g) {
        const std::uint32_t id = gap_cell[g];
        OpenCell& cell = open[id];
        if (!touched(cell.bottom) && !touched(cell.top)) {
          const std::uint32_t ng = cell.top == kNone ? n : pos[cell.top];
          next_gap[ng] = id;
        } else {
          cell.right = Ext(critical_[col]);
          cell.right_point = touched(cell.bottom) ? point_on(cell.bottom, col) : point_on(cell.top, col);
        }
      }
      for (std::uint32_t g = 0; g <= n; ++g) {
        if (next_gap[g] != kNone) continue;
        OpenCell cell;
        cell.bottom = g > 0 ? order[g - 1] : kNone;
        cell.top = g < n ? order[g] : kNone;
        cell.left = Ext(critical_[col]);
        if (touched(cell.bottom)) {
          cell.wall = LeftWall::BottomIntersection;
          cell.left_point = point_on(cell.bottom, col);
        } else {
          cell.wall = LeftWall::ExtraWall;
          cell.left_point = point_on(cell.top, col);
        }
        next_gap[g] = static_cast<std::uint32_t>(open.size());
        open.push_back(cell);
      }
    }
    gap_cell = std::move(next_gap);
    slab_order_[s] = order;
    slab_gap_cell_[s] = gap_cell;

    if (s == m) break;

    // Column s: mark the curves through it and grow the extra walls, using
    // the order of the slab on its left (non-decreasing at the column).
    const QuadExt& x = critical_[s];
    for (std::uint32_t k : column_points[s]) {
      for (std::uint32_t c : points[k].curves) touched_stamp[c] = s;
    }
    auto value_at = [&](std::uint32_t c) { return curves_[c](x); };
    Ext previous_top = Ext::neg_inf();
    for (std::uint32_t k : column_points[s]) {
      const PointRec& p = points[k];
      // The curves through p are exactly the block of curves equal to p.x1 at
      // x in the left slab's order; the walls end on its neighbours.
      std::uint32_t lo = n;
      for (std::uint32_t c : p.curves) lo = std::min(lo, pos[c]);
      const std::uint32_t hi = lo + static_cast<std::uint32_t>(p.curves.size());
      const std::uint32_t below = lo == 0 ? kNone : order[lo - 1];
      const std::uint32_t above = hi == n ? kNone : order[hi];
      const std::uint32_t p_a = p.curves[0];
      const std::uint32_t p_b = p.curves[1];

      // Downward wall, unless the previous point's upward wall is the same set.
      const Ext low_end = below == kNone ? Ext::neg_inf() : Ext(value_at(below));
      const bool duplicate = previous_top.is_finite() && previous_top == Ext(p.x1) && below != kNone &&
                             low_end == Ext(points[k - 1].x1);
      if (!duplicate) {
        VerticalCell v;
        v.at = x;
        v.lower = low_end;
        v.upper = Ext(p.x1);
        v.lower_curve = ref(shared_curves_, below);
        v.direction = Direction::Down;
        std::vector<std::size_t> def{p_a, p_b};
        if (below != kNone) push_unique(def, below);
        column_verticals[s].push_back(static_cast<std::uint32_t>(verticals.size()));
        verticals.push_back(std::move(v));
        vertical_defining.push_back(std::move(def));
      }
      VerticalCell v;
      v.at = x;
      v.lower = Ext(p.x1);
      v.upper = above == kNone ? Ext::pos_inf() : Ext(value_at(above));
      v.upper_curve = ref(shared_curves_, above);
      v.direction = Direction::Up;
      std::vector<std::size_t> def{p_a, p_b};
      if (above != kNone) push_unique(def, above);
      previous_top = v.upper;
      column_verticals[s].push_back(static_cast<std::uint32_t>(verticals.size()));
      verticals.push_back(std::move(v));
      vertical_defining.push_back(std::move(def));
    }
  }

  // Assemble: points, vertical walls, arcs, two-dimensional cells.
  const std::size_t point_base = 0;
  const std::size_t vertical_base = points.size();
  const std::size_t arc_base = vertical_base + verticals.size();
  std::size_t arc_count = 0;
  for (const auto& br : curve_breaks_) arc_count += br.size() + 1;
  const std::size_t twodim_base = arc_base + arc_count;
  cells_.reserve(twodim_base + open.size());

  for (PointRec& p : points) {
    PointCell pc{{std::move(p.x1), std::move(p.x2)}, std::vector<std::size_t>(p.curves.begin(), p.curves.end())};
    std::vector<std::size_t> def = pc.curves;
    if (def.size() > 2) def.resize(2);
    cells_.push_back({std::move(pc), std::move(def)});
  }
  for (std::size_t i = 0; i < verticals.size(); ++i) {
    cells_.push_back({std::move(verticals[i]), std::move(vertical_defining[i])});
  }
  curve_arcs_.assign(n, {});
  for (std::uint32_t c = 0; c < n; ++c) {
    const auto& br = curve_breaks_[c];
    for (std::size_t k = 0; k <= br.size(); ++k) {
      ArcCell arc{{c, shared_curves_[c]}, k == 0 ? Ext::neg_inf() : Ext(critical_[br[k - 1]]),
                  k == br.size() ? Ext::pos_inf() : Ext(critical_[br[k]])};
      std::vector<std::size_t> def{c};
      if (k > 0) push_unique(def, partner(points[curve_points[c][k - 1]], c, kNone));
      if (k < br.size()) push_unique(def, partner(points[curve_points[c][k]], c, kNone));
      curve_arcs_[c].push_back(static_cast<std::uint32_t>(cells_.size()));
      cells_.push_back({std::move(arc), std::move(def)});
    }
  }
  for (OpenCell& oc : open) {
    TwoDimCell t{ref(shared_curves_, oc.bottom), ref(shared_curves_, oc.top), std::move(oc.left), std::move(oc.right),
                 oc.wall};
    std::vector<std::size_t> def;
    if (oc.bottom != kNone) def.push_back(oc.bottom);
    if (oc.top != kNone) push_unique(def, oc.top);
    for (std::uint32_t pt : {oc.left_point, oc.right_point}) {
      if (pt == kNone) continue;
      std::uint32_t c = partner(points[pt], oc.bottom, oc.top);
      if (c != kNone) push_unique(def, c);
    }
    cells_.push_back({std::move(t), std::move(def)});
  }

  for (auto& gaps : slab_gap_cell_) {
    for (auto& id : gaps) id = static_cast<std::uint32_t>(id + twodim_base);
  }
  boundary_cells_.assign(m, {});
  for (std::uint32_t col = 0; col < m; ++col) {
    for (std::uint32_t k : column_points[col]) boundary_cells_[col].push_back(static_cast<std::uint32_t>(point_base + k));
    for (std::uint32_t v : column_verticals[col]) {
      boundary_cells_[col].push_back(static_cast<std::uint32_t>(vertical_base + v));
    }
  }

  census_ = {};
  census_.point = points.size();
  census_.vert_e = verticals.size();
  census_.arc = arc_count;
  census_.twodim = open.size();
  for (const OpenCell& oc : open) {
    switch (oc.wall) {
      case LeftWall::None: ++census_.f1; break;
      case LeftWall::BreakLine: ++census_.f2; break;
      case LeftWall::BottomIntersection: ++census_.f3; break;
      case LeftWall::ExtraWall: ++census_.f4; break;
    }
  }
}

std::size_t CellComplex::arc_containing(std::size_t curve, const QuadExt& x2) const {
  const auto& br = curve_breaks_[curve];
  // Number of break columns strictly left of x2; equality means x2 is a break.
  std::size_t lo = 0;
  std::size_t hi = br.size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    Ordering o = qe_cmp(critical_[br[mid]], x2);
    if (o == Ordering::EQ) return std::numeric_limits<std::size_t>::max();
    if (o == Ordering::LT) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return curve_arcs_[curve][lo];
}

std::size_t CellComplex::find_curve(const QuadPoly& h) const {
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    if (curves_[c] == h) return c;
  }
  return curves_.size();
}

std::vector<std::size_t> CellComplex::zone(const QuadPoly& h) const {
  std::vector<std::size_t> out;
  if (find_curve(h) != curves_.size()) return out;

  const auto& order0 = slab_order_[0];
  Ext x = Ext::neg_inf();
  std::vector<std::uint32_t>::const_iterator below0;
  if (start_) {
    // h is not one of the curves, so the sign just right of start_ decides.
    const QuadExt at(*start_);
    below0 = std::partition_point(order0.begin(), order0.end(),
                                  [&](std::uint32_t c) { return right_sign(h - curves_[c], at) > 0; });
    x = Ext(at);
    // Curves h meets exactly at start_ sit next to the split.
    const Rat hv = h(*start_);
    for (auto it = below0; it != order0.begin() && curves_[*(it - 1)](*start_) == hv; --it) {
      out.push_back(arc_containing(*(it - 1), at));
    }
    for (auto it = below0; it != order0.end() && curves_[*it](*start_) == hv; ++it) {
      out.push_back(arc_containing(*it, at));
    }
  } else {
    below0 = std::partition_point(order0.begin(), order0.end(),
                                  [&](std::uint32_t c) { return sign_at_neg_inf(h - curves_[c]) > 0; });
  }
  std::size_t cell = slab_gap_cell_[0][static_cast<std::size_t>(below0 - order0.begin())];

  for (;;) {
    out.push_back(cell);
    const auto& t = std::get<TwoDimCell>(cells_[cell].shape);

    // Earliest point strictly inside the cell's range where h meets a side.
    std::optional<QuadExt> exit;
    const CurveRef* side = nullptr;
    bool via_top = false;
    for (const auto* bound : {&t.bottom, &t.top}) {
      if (!*bound) continue;
      for (const QuadExt& root : (h - (*bound)->poly()).roots().roots) {
        if (!(x < Ext(root)) || !(Ext(root) < t.right)) continue;
        if (!exit || less_qe(root, *exit)) {
          exit = root;
          side = &**bound;
          via_top = bound == &t.top;
        }
        break;
      }
    }
    if (exit) {
      out.push_back(arc_containing(side->index, *exit));
      const int s = right_sign(h - side->poly(), *exit);
      if ((via_top && s > 0) || (!via_top && s < 0)) {
        auto it = std::upper_bound(critical_.begin(), critical_.end(), *exit, less_qe);
        const auto slab = static_cast<std::size_t>(it - critical_.begin());
        const auto& order = slab_order_[slab];
        const auto p = static_cast<std::size_t>(std::find(order.begin(), order.end(), side->index) - order.begin());
        cell = slab_gap_cell_[slab][via_top ? p + 1 : p];
      }
      x = Ext(*exit);
      continue;
    }
    if (t.right.is_pos_inf()) break;

    const QuadExt& r = t.right.value();
    const auto col = static_cast<std::size_t>(
        std::lower_bound(critical_.begin(), critical_.end(), r, less_qe) - critical_.begin());
    const QuadExt v = h(r);
    for (std::uint32_t id : boundary_cells_[col]) {
      const auto& shape = cells_[id].shape;
      if (const auto* pc = std::get_if<PointCell>(&shape)) {
        if (pc->p.x1 == v) out.push_back(id);
      } else {
        const auto& vc = std::get<VerticalCell>(shape);
        if (vc.lower < Ext(v) && Ext(v) < vc.upper) out.push_back(id);
      }
    }
    for (const auto* bound : {&t.bottom, &t.top}) {
      if (!*bound || !((*bound)->poly()(r) == v)) continue;
      std::size_t arc = arc_containing((*bound)->index, r);
      if (arc != std::numeric_limits<std::size_t>::max()) out.push_back(arc);
    }
    const auto& order = slab_order_[col + 1];
    auto below = std::partition_point(order.begin(), order.end(),
                                      [&](std::uint32_t c) { return right_sign(h - curves_[c], r) > 0; });
    cell = slab_gap_cell_[col + 1][static_cast<std::size_t>(below - order.begin())];
    x = t.right;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::vector<std::size_t>> CellComplex::crossing_sets(const std::vector<QuadPoly>& hs) const {
  std::vector<std::vector<std::size_t>> sets(cells_.size());
  for (std::size_t j = 0; j < hs.size(); ++j) {
    for (std::size_t id : zone(hs[j])) {
      // A single point is never crossed; everything else met by h is.
      if (!std::holds_alternative<PointCell>(cells_[id].shape)) sets[id].push_back(j);
    }
  }
  return sets;
}

std::vector<std::size_t> CellComplex::cells_meeting_vertical(const QuadExt& a) const {
  std::vector<std::size_t> out;
  auto it = std::lower_bound(critical_.begin(), critical_.end(), a, less_qe);
  const auto slab = static_cast<std::size_t>(it - critical_.begin());
  const bool on_column = it != critical_.end() && *it == a;
  for (std::size_t c = 0; c < curves_.size(); ++c) {
    std::size_t arc = arc_containing(c, a);
    if (arc != std::numeric_limits<std::size_t>::max()) out.push_back(arc);
  }
  if (on_column) {
    for (std::uint32_t id : boundary_cells_[slab]) out.push_back(id);
    for (std::uint32_t id : slab_gap_cell_[slab]) {
      if (Ext(a) < std::get<TwoDimCell>(cells_[id].shape).right) out.push_back(id);
    }
  } else {
    for (std::uint32_t id : slab_gap_cell_[slab]) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> CellComplex::locate(const Rat& x1, const Rat& x2) const {
  const QuadExt q(x2);
  auto it = std::lower_bound(critical_.begin(), critical_.end(), q, less_qe);
  const auto slab = static_cast<std::size_t>(it - critical_.begin());
  std::vector<std::size_t> candidates;
  const std::size_t n = curves_.size();

  if (it == critical_.end() || !(*it == q)) {
    const auto& order = slab_order_[slab];
    auto first_ge =
        std::partition_point(order.begin(), order.end(), [&](std::uint32_t c) { return curves_[c](x2) < x1; });
    const auto g = static_cast<std::size_t>(first_ge - order.begin());
    if (g < n && curves_[order[g]](x2) == x1) {
      candidates.push_back(arc_containing(order[g], q));
    } else {
      candidates.push_back(slab_gap_cell_[slab][g]);
    }
  } else {
    for (std::uint32_t id : boundary_cells_[slab]) candidates.push_back(id);
    for (std::size_t c = 0; c < n; ++c) {
      if (curves_[c](x2) != x1) continue;
      std::size_t arc = arc_containing(c, q);
      if (arc != std::numeric_limits<std::size_t>::max()) candidates.push_back(arc);
    }
    for (std::uint32_t id : slab_gap_cell_[slab]) {
      const auto& t = std::get<TwoDimCell>(cells_[id].shape);
      if (Ext(q) < t.right) candidates.push_back(id);
    }
  }

  std::vector<std::size_t> out;
  for (std::size_t id : candidates) {
    if (contains(cells_[id].region(), x1, x2)) out.push_back(id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) {
    throw Error(ErrorKind::CoverageGap, "no cell contains (" + format_rat(x1) + ", " + format_rat(x2) + ")");
  }
  return out;
}

std::vector<CrossingViolation> verify_no_crossing(const CurveFamily& family, std::span<const CurveParam> params,
                                                  std::span<const Cell> cells) {
  std::vector<QuadPoly> polys;
  polys.reserve(params.size());
  for (const CurveParam& s : params) polys.push_back(family.branch(1, s));
  std::vector<CrossingViolation> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Region region = cells[i].region();
    for (std::size_t j = 0; j < polys.size(); ++j) {
      if (crosses(polys[j], region)) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<std::size_t> crossing_set(const CurveFamily& family, std::span<const CurveParam> params,
                                      const Region& region) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < params.size(); ++j) {
    if (crosses(family.branch(1, params[j]), region)) out.push_back(j);
  }
  return out;
}

CensusFit census_fit(const CurveFamily& family, std::span<const std::size_t> sizes, std::size_t trials,
                     std::uint64_t seed, const InstanceGenerator& generator) {
  CensusFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  std::uint64_t stream = 0;
  for (std::size_t n : sizes) {
    for (std::size_t t = 0; t < trials; ++t) {
      std::mt19937_64 rng(derive_seed(seed, stream++));
      std::vector<CurveParam> params = generator ? generator(n, rng) : random_curves(family, n, rng);
      CellComplex complex(family, std::move(params));
      fit.samples.push_back({n, complex.census()});
      xs.push_back(static_cast<double>(n));
      ys.push_back(static_cast<double>(complex.census().total()));
    }
  }
  LinearFit line = loglog_fit(xs, ys);
  fit.slope = line.slope;
  fit.intercept = line.intercept;
  fit.constant = std::exp(line.intercept);
  return fit;
}

}  // namespace cutting_forge
