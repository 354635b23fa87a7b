#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cutting_forge/algebra.hpp"
#include "cutting_forge/families.hpp"
#include "cutting_forge/region.hpp"

namespace cutting_forge {

enum class CellKind { Point, VerticalOnBreakLine, VerticalExtra, Arc, TwoDim };

std::string_view to_string(CellKind kind);

/// A curve of the parameter set, by index, together with its polynomial
/// (shared with the complex that produced the cell).
struct CurveRef {
  std::size_t index = 0;
  std::shared_ptr<const QuadPoly> shared;

  const QuadPoly& poly() const { return *shared; }
};

struct PointCell {
  PointQE p;
  std::vector<std::size_t> curves;  ///< all curves through p, ascending
};

enum class Direction { Up, Down };

/// Open vertical segment x2 = at, lower < x1 < upper. An extra wall grows
/// from an intersection point (its lower end for Up, upper end for Down) to
/// the first curve met, or to an infinity.
struct VerticalCell {
  QuadExt at;
  Ext lower;
  Ext upper;
  std::optional<CurveRef> lower_curve;
  std::optional<CurveRef> upper_curve;
  Direction direction = Direction::Up;
  bool on_break_line = false;
};

struct ArcCell {
  CurveRef carrier;
  Ext left;
  Ext right;
};

/// Which wall starts a two-dimensional cell on the left: nothing (F1), a
/// breakpoint line (F2), a proper intersection on the bottom curve (F3), or an
/// extra vertical wall (F4).
enum class LeftWall { None, BreakLine, BottomIntersection, ExtraWall };

struct TwoDimCell {
  std::optional<CurveRef> bottom;
  std::optional<CurveRef> top;
  Ext left;
  Ext right;
  LeftWall wall = LeftWall::None;
};

struct Cell {
  std::variant<PointCell, VerticalCell, ArcCell, TwoDimCell> shape;
  /// Curve parameters the cell is defined over (at most four).
  std::vector<std::size_t> defining;

  CellKind kind() const;
  Region region() const;
};

}  // namespace cutting_forge
