#pragma once

// Exact checks of the correlation inequality for up-sets: if F is generated
// by sets of size at most u and 0 < p~ <= p <= 1, then
// Pr_{p~}(A in F) / Pr_p(A in F) >= (p~/p)^u.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "cutting_forge/algebra.hpp"

namespace cutting_forge {

/// Up-set over the ground set {1..m} generated by the defining sets.
struct UpSetSystem {
  std::size_t m = 0;
  std::vector<std::vector<std::size_t>> defining;

  /// Largest defining set size (0 when there are none).
  std::size_t u() const;
  /// Throws PreconditionViolated when an element is outside 1..m.
  void check() const;
  /// Membership of the subset encoded as a bitmask (bit i-1 for element i).
  bool contains(std::uint32_t subset) const;
};

/// Largest ground set filter_weight enumerates.
inline constexpr std::size_t kMaxEnumeratedGround = 24;

/// Pr(A in F) for a p-Bernoulli subset A. Uses inclusion-exclusion over the
/// defining sets when there are at most 12 of them, else enumerates all 2^m
/// subsets (GroundSetTooLarge above 24).
Rat filter_weight(const UpSetSystem& sys, const Rat& p);

/// The same probability by explicit enumeration of all subsets.
Rat filter_weight_enumerated(const UpSetSystem& sys, const Rat& p);

/// The same probability by inclusion-exclusion over the defining sets.
Rat filter_weight_inclusion_exclusion(const UpSetSystem& sys, const Rat& p);

struct CorrelationResult {
  Rat ratio;
  Rat bound;
  bool holds = false;
};

CorrelationResult correlation_check(const UpSetSystem& sys, const Rat& p, const Rat& p_tilde);

struct CorrelationViolation {
  UpSetSystem sys;
  Rat p;
  Rat p_tilde;
  CorrelationResult result;
};

struct FuzzReport {
  std::size_t exhaustive_systems = 0;
  std::size_t exhaustive_checks = 0;
  std::size_t random_systems = 0;
  std::size_t random_checks = 0;
  std::vector<CorrelationViolation> violations;
  /// Instances where the ratio met the bound exactly.
  std::size_t equalities = 0;
};

/// The grid {1/8, ..., 7/8}.
std::vector<Rat> eighths();

/// Every nonempty antichain of subsets of {1..m}, as up-set systems.
std::vector<UpSetSystem> all_antichain_systems(std::size_t m);

/// Exhaustive sweep over antichains for m <= min(4, m_max), then `trials`
/// random systems with m <= m_max, at most q_max defining sets of size at
/// most u_max, each checked on one random (p, p~) pair of the grid.
FuzzReport correlation_fuzz(std::size_t m_max, std::size_t q_max, std::size_t u_max, std::size_t trials,
                            std::uint64_t seed);

}  // namespace cutting_forge
