#pragma once

// Point/curve incidences: exact counting, K_{k,k}-freeness, the
// Zarankiewicz-type and Kovari-Sos-Turan bound formulas, shatter functions of
// finite set systems, and generators for exponent experiments.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cutting_forge/families.hpp"

namespace cutting_forge {

struct RatPoint {
  Rat x1;
  Rat x2;

  friend bool operator==(const RatPoint&, const RatPoint&) = default;
};

struct Edge {
  std::size_t point = 0;
  std::size_t curve = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct IncidenceInstance {
  CurveFamily family{FamilyKind::Lines};
  std::vector<RatPoint> points;
  std::vector<CurveParam> curves;
  /// When set, used verbatim instead of the on-curve relation.
  std::optional<std::vector<Edge>> edges;
};

/// Drops repeated points and curves, keeping first occurrences in order.
/// Explicit edges are remapped and deduplicated.
IncidenceInstance deduplicate(IncidenceInstance inst);

struct IncidenceCount {
  std::size_t count = 0;
  std::vector<Edge> edges;  ///< sorted by (point, curve)
};

/// Exact incidences of the instance as given (deduplicate first if needed).
IncidenceCount count_incidences(const IncidenceInstance& inst);

/// Same count by testing every point against every curve.
IncidenceCount count_incidences_brute(const IncidenceInstance& inst);

struct KkkWitness {
  std::vector<std::size_t> points;
  std::vector<std::size_t> curves;
};

struct KkkResult {
  bool free = true;
  std::optional<KkkWitness> witness;
  std::size_t nodes = 0;  ///< search nodes visited
};

inline constexpr std::size_t kDefaultNodeBudget = 50'000'000;

/// Whether the bipartite graph on m points and n curves has no K_{k,k}.
/// Vertices of degree < k are pruned iteratively, then k-subsets of the
/// smaller side are searched with neighbourhood intersection. Throws
/// CombinatorialBudgetExceeded past `node_budget` search nodes.
KkkResult is_kkk_free(std::size_t m, std::size_t n, std::span<const Edge> edges, std::size_t k,
                      std::size_t node_budget = kDefaultNodeBudget);

/// c * (m^(d/(2d-1)) * n^((2d-2)/(2d-1)) + m + n). k only selects the
/// constant and does not enter the formula.
double zarankiewicz_bound(double m, double n, unsigned d, unsigned k, double c);

/// c1 * (m * n^(1-1/d) + n).
double kst_bound(double m, double n, unsigned d, double c1);

/// Finite set system over {1..ground}.
struct SetSystem {
  std::size_t ground = 0;
  std::vector<std::vector<std::size_t>> sets;
};

inline constexpr std::size_t kMaxShatterGround = 20;

struct ShatterProfile {
  std::size_t ground = 0;
  std::vector<std::size_t> values;  ///< values[z-1] = pi(z)
  double slope = 0;                 ///< fitted over the largest half of z
  double constant = 0;              ///< pi(z) ~ constant * z^slope
};

/// Exact shatter function by enumerating every z-subset of the ground set.
ShatterProfile shatter_function(const SetSystem& sys, std::size_t z_max);

/// Each curve's neighbourhood: the points of `points` lying on it.
SetSystem curve_neighbourhoods(const CurveFamily& family, std::span<const RatPoint> points,
                               std::span<const CurveParam> curves);

/// z integer points with no three collinear and every line through two of
/// them, plus `extra` random lines.
struct PointLineSystem {
  std::vector<RatPoint> points;
  std::vector<CurveParam> lines;
};
PointLineSystem dual_line_system(std::size_t z, std::size_t extra, std::uint64_t seed);

/// Grid instance with k = N^(1/3): points {x2 in [k], x1 in [2k^2]} (2N of
/// them, so that every line meets k points) and the N lines x1 = a*x2 + b,
/// a in [k], b in [k^2]. Throws NotACube unless N = k^3 with k >= 2.
IncidenceInstance generate_grid_st(std::size_t N);

struct ExponentSample {
  double m = 0;
  double n = 0;
  double count = 0;
};

/// Least-squares slope of log count against log n. Needs at least three
/// samples with strictly increasing n.
double exponent_fit(std::span<const ExponentSample> samples);

/// Random K_{2,2}-free point/line instances with m = n <= n_max, mixing
/// subsampled grids, points placed on random lines, and concurrent pencils.
std::vector<IncidenceInstance> incidence_fuzz_instances(std::size_t count, std::size_t n_max, std::uint64_t seed);

/// c with count = zarankiewicz_bound(m, n, 2, 2, c) on the N = 27 grid.
double calibrate_zarankiewicz();

/// c1 with count = kst_bound(m, n, 2, c1) on the N = 27 grid.
double calibrate_kst();

}  // namespace cutting_forge
