#pragma once

// Semi-algebraic regions of the plane in the normal form shared by all cell
// kinds and by intersections of two cells. Coordinates follow the usual
// vertical-decomposition convention: x1 is the vertical axis and x2 the
// horizontal one, and every curve is a graph x1 = p(x2).

#include <variant>
#include <vector>

#include "cutting_forge/algebra.hpp"

namespace cutting_forge {

/// Subset of the vertical line x2 = at: either a single point (x1 = point)
/// or the open interval lower < x1 < upper.
struct Slice {
  QuadExt at;
  bool is_point = false;
  QuadExt point;
  Ext lower = Ext::neg_inf();
  Ext upper = Ext::pos_inf();
};

/// {(x1, x2) : left < x2 < right, x1 = g(x2) for all carriers g,
///             l(x2) < x1 < u(x2) for all lower l and upper u}.
/// ordered_bounds is a hint that a single lower/upper pair is already known
/// to satisfy l < u on the whole interval.
struct Band {
  Ext left = Ext::neg_inf();
  Ext right = Ext::pos_inf();
  std::vector<QuadPoly> carriers;
  std::vector<QuadPoly> lower;
  std::vector<QuadPoly> upper;
  bool ordered_bounds = false;
};

struct EmptyRegion {};

using Region = std::variant<EmptyRegion, Slice, Band>;

Region intersect(const Region& x, const Region& y);

bool is_empty(const Region& region);

/// True iff the sign of x1 - h(x2) is not constant on the region, i.e. one of
/// the sets {x1 < h}, {x1 = h}, {x1 > h} crosses it.
bool crosses(const QuadPoly& h, const Region& region);

bool contains(const Region& region, const Rat& x1, const Rat& x2);

/// A rational point inside the region when one exists (slices at an
/// irrational abscissa and point slices with an irrational coordinate have
/// none).
std::optional<std::pair<Rat, Rat>> rational_witness(const Region& region);

}  // namespace cutting_forge
