#include "cutting_forge/correlation.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "cutting_forge/error.hpp"
#include "cutting_forge/random.hpp"

namespace cutting_forge {

namespace {

Rat power(const Rat& base, std::size_t e) {
  Rat out(1);
  for (std::size_t i = 0; i < e; ++i) out *= base;
  return out;
}

std::vector<std::uint32_t> masks_of(const UpSetSystem& sys) {
  std::vector<std::uint32_t> masks;
  masks.reserve(sys.defining.size());
  for (const auto& d : sys.defining) {
    std::uint32_t mask = 0;
    for (std::size_t e : d) mask |= std::uint32_t{1} << (e - 1);
    masks.push_back(mask);
  }
  return masks;
}

void check_probability(const Rat& p) {
  if (sgn(p) < 0 || p > 1) throw Error(ErrorKind::PreconditionViolated, "probability outside [0,1]: " + format_rat(p));
}

}  // namespace

std::size_t UpSetSystem::u() const {
  std::size_t out = 0;
  for (const auto& d : defining) out = std::max(out, d.size());
  return out;
}

void UpSetSystem::check() const {
  if (m == 0) throw Error(ErrorKind::PreconditionViolated, "ground set must be nonempty");
  for (const auto& d : defining)
    for (std::size_t e : d)
      if (e < 1 || e > m)
        throw Error(ErrorKind::PreconditionViolated,
                    "element " + std::to_string(e) + " outside 1.." + std::to_string(m));
}

bool UpSetSystem::contains(std::uint32_t subset) const {
  for (std::uint32_t mask : masks_of(*this))
    if ((mask & subset) == mask) return true;
  return false;
}

Rat filter_weight_enumerated(const UpSetSystem& sys, const Rat& p) {
  sys.check();
  check_probability(p);
  if (sys.m > kMaxEnumeratedGround)
    throw Error(ErrorKind::GroundSetTooLarge, "m = " + std::to_string(sys.m) + " exceeds " +
                                                  std::to_string(kMaxEnumeratedGround));
  const auto masks = masks_of(sys);
  // Members of F by cardinality, then one weighted sum.
  std::vector<std::uint64_t> by_size(sys.m + 1, 0);
  const std::uint32_t end = std::uint32_t{1} << sys.m;
  for (std::uint32_t x = 0; x < end; ++x) {
    for (std::uint32_t mask : masks) {
      if ((mask & x) == mask) {
        ++by_size[std::popcount(x)];
        break;
      }
    }
  }
  const Rat q = 1 - p;
  Rat out(0);
  for (std::size_t k = 0; k <= sys.m; ++k)
    if (by_size[k] != 0) out += Rat(Int(static_cast<unsigned long>(by_size[k]))) * power(p, k) * power(q, sys.m - k);
  return out;
}

Rat filter_weight_inclusion_exclusion(const UpSetSystem& sys, const Rat& p) {
  sys.check();
  check_probability(p);
  const auto masks = masks_of(sys);
  const std::size_t q = masks.size();
  if (q > 20) throw Error(ErrorKind::PreconditionViolated, "too many defining sets for inclusion-exclusion");
  // Signed counts of subfamilies by the size of their union.
  std::vector<long long> coeff(sys.m + 1, 0);
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << q); ++s) {
    std::uint32_t uni = 0;
    for (std::size_t i = 0; i < q; ++i)
      if (s >> i & 1) uni |= masks[i];
    coeff[std::popcount(uni)] += (std::popcount(s) % 2 == 1) ? 1 : -1;
  }
  Rat out(0);
  for (std::size_t k = 0; k <= sys.m; ++k)
    if (coeff[k] != 0) out += Rat(Int(static_cast<long>(coeff[k]))) * power(p, k);
  return out;
}

Rat filter_weight(const UpSetSystem& sys, const Rat& p) {
  if (sys.defining.size() <= 12) return filter_weight_inclusion_exclusion(sys, p);
  return filter_weight_enumerated(sys, p);
}

CorrelationResult correlation_check(const UpSetSystem& sys, const Rat& p, const Rat& p_tilde) {
  if (sys.defining.empty()) throw Error(ErrorKind::EmptyFilter, "no defining sets");
  if (!(sgn(p_tilde) > 0 && p_tilde <= p && p <= 1))
    throw Error(ErrorKind::PreconditionViolated, "need 0 < p~ <= p <= 1");
  CorrelationResult out;
  const Rat wp = filter_weight(sys, p);
  // F contains the full ground set, so wp > 0 for p > 0.
  out.ratio = filter_weight(sys, p_tilde) / wp;
  out.bound = power(Rat(p_tilde / p), sys.u());
  out.holds = out.ratio >= out.bound;
  return out;
}

std::vector<Rat> eighths() {
  std::vector<Rat> out;
  for (int i = 1; i <= 7; ++i) out.emplace_back(i, 8);
  for (auto& r : out) r.canonicalize();
  return out;
}

std::vector<UpSetSystem> all_antichain_systems(std::size_t m) {
  if (m == 0 || m > 4) throw Error(ErrorKind::PreconditionViolated, "antichain sweep needs 1 <= m <= 4");
  const std::uint32_t subsets = std::uint32_t{1} << m;
  std::vector<UpSetSystem> out;
  // Each family of subsets is a bitmask over the 2^m subsets.
  const std::uint64_t families = std::uint64_t{1} << subsets;
  for (std::uint64_t fam = 1; fam < families; ++fam) {
    bool antichain = true;
    for (std::uint32_t a = 0; a < subsets && antichain; ++a) {
      if (!(fam >> a & 1)) continue;
      for (std::uint32_t b = 0; b < subsets; ++b) {
        if (b != a && (fam >> b & 1) && (a & b) == a) {
          antichain = false;
          break;
        }
      }
    }
    if (!antichain) continue;
    UpSetSystem sys;
    sys.m = m;
    for (std::uint32_t a = 0; a < subsets; ++a) {
      if (!(fam >> a & 1)) continue;
      std::vector<std::size_t> d;
      for (std::size_t e = 0; e < m; ++e)
        if (a >> e & 1) d.push_back(e + 1);
      sys.defining.push_back(std::move(d));
    }
    out.push_back(std::move(sys));
  }
  return out;
}

FuzzReport correlation_fuzz(std::size_t m_max, std::size_t q_max, std::size_t u_max, std::size_t trials,
                            std::uint64_t seed) {
  if (m_max == 0 || m_max > 12) throw Error(ErrorKind::PreconditionViolated, "correlation_fuzz needs 1 <= m_max <= 12");
  if (q_max == 0 || u_max == 0) throw Error(ErrorKind::PreconditionViolated, "q_max and u_max must be positive");
  FuzzReport report;
  const auto grid = eighths();
  auto record = [&](const UpSetSystem& sys, const Rat& p, const Rat& pt) {
    const auto res = correlation_check(sys, p, pt);
    if (!res.holds) report.violations.push_back({sys, p, pt, res});
    if (res.ratio == res.bound) ++report.equalities;
  };

  for (std::size_t m = 1; m <= std::min<std::size_t>(4, m_max); ++m) {
    for (const auto& sys : all_antichain_systems(m)) {
      ++report.exhaustive_systems;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
          record(sys, grid[i], grid[j]);
          ++report.exhaustive_checks;
        }
      }
    }
  }

  std::mt19937_64 rng(derive_seed(seed, 0xC0));
  for (std::size_t t = 0; t < trials; ++t) {
    UpSetSystem sys;
    sys.m = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(m_max)));
    const auto q = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(q_max)));
    const auto u_cap = static_cast<std::int64_t>(std::min(u_max, sys.m));
    for (std::size_t i = 0; i < q; ++i) {
      const auto size = static_cast<std::size_t>(uniform_int(rng, 1, u_cap));
      std::vector<std::size_t> elems(sys.m);
      for (std::size_t e = 0; e < sys.m; ++e) elems[e] = e + 1;
      // Partial Fisher-Yates for a uniform subset of the requested size.
      for (std::size_t k = 0; k < size; ++k) {
        const auto pick = static_cast<std::size_t>(uniform_int(rng, static_cast<std::int64_t>(k),
                                                               static_cast<std::int64_t>(sys.m - 1)));
        std::swap(elems[k], elems[pick]);
      }
      elems.resize(size);
      std::sort(elems.begin(), elems.end());
      sys.defining.push_back(std::move(elems));
    }
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, 6));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, 6));
    record(sys, grid[std::max(a, b)], grid[std::min(a, b)]);
    ++report.random_systems;
    ++report.random_checks;
  }
  return report;
}

}  // namespace cutting_forge
