#pragma once

// 1/r-cuttings built from random samples: the suboptimal cutting obtained by
// resampling at rate r'/n, and the two-level optimal cutting that refines the
// heavily crossed cells of a sample at rate r/n. Also the Monte Carlo tail
// estimator and the exact binomial moment check.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutting_forge/decomposition.hpp"

namespace cutting_forge {

struct SampleConfig {
  double p = 0;
  std::uint64_t seed = 0;
  std::size_t max_retries = 100;
};

/// Indices of the sampled elements of a ground set of size n, ascending.
std::vector<std::size_t> bernoulli_sample(std::size_t n, const SampleConfig& cfg);

std::vector<CurveParam> bernoulli_sample(std::span<const CurveParam> H, const SampleConfig& cfg);

/// Empirical decomposition constant C (max |CT(S)| / |S|^2 over small random
/// instances) and the resulting sampling constant A.
struct Calibration {
  double C = 0;
  double A = 0;
  unsigned d = 2;
};

/// Larger root of 3 * 2^(2d) * C * A^d = 2^A, by bisection on [1, 64].
double solve_A(double C, unsigned d);

Calibration calibrate(const CurveFamily& family, std::uint64_t seed = 0x5EEDC0FFEEULL);

/// Calibration for the family, computed once per process.
const Calibration& default_calibration(const CurveFamily& family);

struct TrailEntry {
  std::string stage;  ///< "direct", "single", "level1" or "sub"
  std::uint64_t seed = 0;
  std::size_t attempt = 0;
  std::size_t sample_size = 0;
  std::size_t cells = 0;
  bool accepted = false;
};

std::string format_trail(std::span<const TrailEntry> trail);

struct Piece {
  std::size_t outer = 0;                  ///< cell of the level-1 complex
  std::optional<std::size_t> refinement;  ///< set for pieces Δ' ∩ Δ
  std::size_t inner = 0;                  ///< cell of the refinement complex
  std::vector<std::size_t> crossing;      ///< indices into Cutting::H
};

struct Refinement {
  std::size_t outer = 0;
  Rat t;
  std::vector<std::size_t> subset;  ///< I_H(Δ) as indices into Cutting::H
  std::shared_ptr<const CellComplex> complex;
  /// Piece index per cell of `complex`, or npos when Δ' ∩ Δ is empty.
  std::vector<std::size_t> inner_piece;
};

struct Cutting {
  CurveFamily family{FamilyKind::Lines};
  std::vector<CurveParam> H;  ///< deduplicated and canonically sorted
  Rat r;
  std::shared_ptr<const CellComplex> complex;
  /// Per level-1 cell: the piece index when it passes through, else npos.
  std::vector<std::size_t> outer_piece;
  std::vector<std::size_t> outer_refinement;
  std::vector<Refinement> refinements;
  std::vector<Piece> pieces;
  std::vector<TrailEntry> trail;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t max_crossing() const;
  /// Every piece has |crossing| <= n / r.
  bool within_budget() const;
  Region piece_region(const Piece& piece) const;
  /// Pieces containing (x1, x2).
  std::vector<std::size_t> locate(const Rat& x1, const Rat& x2) const;
};

Cutting suboptimal_cutting(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r,
                           const SampleConfig& cfg, const Calibration& cal);

inline Cutting suboptimal_cutting(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r,
                                  const SampleConfig& cfg) {
  return suboptimal_cutting(family, std::move(H), r, cfg, default_calibration(family));
}

Cutting optimal_cutting(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r, const SampleConfig& cfg,
                        const Calibration& cal);

inline Cutting optimal_cutting(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r,
                               const SampleConfig& cfg) {
  return optimal_cutting(family, std::move(H), r, cfg, default_calibration(family));
}

/// Budget on the level-1 size functional sum over cells of
/// 1 (t <= 1) or C t^d log^d(t + 1) (t > 1).
double level1_budget(const Calibration& cal, double r);

/// Independent exact recount of every piece's crossing set against all of H.
bool verify_cutting_exact(const Cutting& cutting, std::size_t max_pieces = static_cast<std::size_t>(-1));

struct TailPoint {
  Rat t;
  double mean = 0;
  double stderr_ = 0;
};

/// Means of |T(S)_{>=t}| over `trials` samples at rate r/n. Trials run on
/// up to CUTTING_FORGE_THREADS threads and are merged by trial index.
std::vector<TailPoint> tail_estimate(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r,
                                     std::span<const Rat> t_values, std::size_t trials, std::uint64_t seed);

struct MomentResult {
  Rat exact;
  Rat bound;
  bool holds = false;
};

/// E|S|^d for S ~ Binomial(n, p), exactly, against (np + d)^d.
MomentResult moment_check(std::size_t n, const Rat& p, unsigned d);

/// Worker count for Monte Carlo loops.
std::size_t worker_threads();

}  // namespace cutting_forge
