#pragma once

// Vertical cell decomposition of a finite set of curves: intersection points,
// extra vertical walls grown from each point to the nearest curve above and
// below, the open arcs of each curve between its intersection points, and the
// open two-dimensional pieces left over. No cell is crossed by any curve of
// the set, and the cells cover the plane with O(n^2) cells.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "cutting_forge/cell.hpp"
#include "cutting_forge/families.hpp"

namespace cutting_forge {

struct Census {
  std::size_t point = 0;
  std::size_t vert_u = 0;
  std::size_t vert_e = 0;
  std::size_t arc = 0;
  std::size_t twodim = 0;
  // Two-dimensional cells by left wall.
  std::size_t f1 = 0;
  std::size_t f2 = 0;
  std::size_t f3 = 0;
  std::size_t f4 = 0;

  std::size_t total() const { return point + vert_u + vert_e + arc + twodim; }
  friend bool operator==(const Census&, const Census&) = default;
};

class CellComplex {
 public:
  /// Builds the decomposition; duplicate parameters are removed first.
  CellComplex(CurveFamily family, std::vector<CurveParam> params);

  /// Decomposition of the closed slab lo <= x2 <= hi only: intersection points
  /// outside it are ignored, so cells agree with the full decomposition inside
  /// the slab and may be crossed outside it. Zones are complete inside the
  /// slab and may contain extra cells.
  CellComplex(CurveFamily family, std::vector<CurveParam> params, const Ext& lo, const Ext& hi);

  bool windowed() const { return windowed_; }

  const CurveFamily& family() const { return family_; }
  const std::vector<CurveParam>& params() const { return params_; }
  const std::vector<QuadPoly>& curves() const { return curves_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Census& census() const { return census_; }
  std::size_t size() const { return cells_.size(); }

  /// Sorted distinct abscissae of the intersection points.
  const std::vector<QuadExt>& critical_abscissae() const { return critical_; }

  /// Indices of every cell containing (x1, x2). Throws CoverageGap if none.
  std::vector<std::size_t> locate(const Rat& x1, const Rat& x2) const;

  /// Cells met by the graph of h, found by walking h from left to right.
  /// Empty when h is one of the curves.
  std::vector<std::size_t> zone(const QuadPoly& h) const;

  /// Per cell, the indices into `hs` of the curves crossing it.
  std::vector<std::vector<std::size_t>> crossing_sets(const std::vector<QuadPoly>& hs) const;

  /// Every cell meeting the vertical line x2 = a.
  std::vector<std::size_t> cells_meeting_vertical(const QuadExt& a) const;

  /// Index of the curve equal to h, or size() of curves() if none.
  std::size_t find_curve(const QuadPoly& h) const;

 private:
  void build(const Ext& lo, const Ext& hi);
  std::size_t arc_containing(std::size_t curve, const QuadExt& x2) const;

  CurveFamily family_;
  std::vector<CurveParam> params_;
  std::vector<QuadPoly> curves_;
  std::vector<std::shared_ptr<const QuadPoly>> shared_curves_;
  std::vector<Cell> cells_;
  Census census_;

  std::vector<QuadExt> critical_;
  bool windowed_ = false;
  std::optional<Rat> start_;  ///< where zone walks begin, when not at -inf
  std::vector<std::vector<std::uint32_t>> slab_order_;
  std::vector<std::vector<std::uint32_t>> slab_gap_cell_;
  std::vector<std::vector<std::uint32_t>> boundary_cells_;
  std::vector<std::vector<std::uint32_t>> curve_breaks_;
  std::vector<std::vector<std::uint32_t>> curve_arcs_;
};

CellComplex build_decomposition(const CurveFamily& family, std::vector<CurveParam> params);

inline std::vector<std::size_t> locate(const CellComplex& complex, const Rat& x1, const Rat& x2) {
  return complex.locate(x1, x2);
}

struct CrossingViolation {
  std::size_t cell = 0;
  std::size_t param = 0;
};

std::vector<CrossingViolation> verify_no_crossing(const CurveFamily& family, std::span<const CurveParam> params,
                                                  std::span<const Cell> cells);

inline std::vector<CrossingViolation> verify_no_crossing(const CellComplex& complex) {
  return verify_no_crossing(complex.family(), complex.params(), complex.cells());
}

/// Exact crossing set: indices into `params` of the curves crossing the cell.
std::vector<std::size_t> crossing_set(const CurveFamily& family, std::span<const CurveParam> params,
                                      const Region& region);

using InstanceGenerator = std::function<std::vector<CurveParam>(std::size_t n, std::mt19937_64& rng)>;

struct CensusSample {
  std::size_t n = 0;
  Census census;
};

struct CensusFit {
  double slope = 0;
  double intercept = 0;
  double constant = 0;  ///< exp(intercept)
  std::vector<CensusSample> samples;
};

/// Fits log|CT(S)| against log n over random instances of each size.
CensusFit census_fit(const CurveFamily& family, std::span<const std::size_t> sizes, std::size_t trials,
                     std::uint64_t seed, const InstanceGenerator& generator = {});

}  // namespace cutting_forge
