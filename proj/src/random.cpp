#include "cutting_forge/random.hpp"

#include <set>

namespace cutting_forge {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  // Done by hand rather than with uniform_int_distribution so that streams
  // do not depend on the standard library implementation.
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return lo + static_cast<std::int64_t>(v % span);
}

namespace {

std::vector<std::int64_t> distinct_ints(std::size_t n, std::int64_t lo, std::int64_t hi, std::mt19937_64& rng,
                                        bool skip_zero) {
  std::set<std::int64_t> seen;
  std::vector<std::int64_t> out;
  while (out.size() < n) {
    std::int64_t v = uniform_int(rng, lo, hi);
    if (skip_zero && v == 0) continue;
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<CurveParam> random_lines(std::size_t n, std::mt19937_64& rng) {
  const auto range = static_cast<std::int64_t>(64 + 16 * n);
  auto slopes = distinct_ints(n, -range, range, rng, false);
  std::vector<CurveParam> out;
  out.reserve(n);
  for (std::int64_t a : slopes) {
    std::int64_t b = uniform_int(rng, -range * range, range * range);
    out.push_back({{Rat(static_cast<long>(a)), Rat(static_cast<long>(b))}});
  }
  return out;
}

std::vector<CurveParam> random_parabolas(std::size_t n, std::mt19937_64& rng) {
  const auto range = static_cast<std::int64_t>(32 + 8 * n);
  auto leading = distinct_ints(n, -range, range, rng, true);
  std::vector<CurveParam> out;
  out.reserve(n);
  for (std::int64_t a : leading) {
    std::int64_t b = uniform_int(rng, -range * 4, range * 4);
    std::int64_t c = uniform_int(rng, -range * 16, range * 16);
    out.push_back({{Rat(static_cast<long>(a)), Rat(static_cast<long>(b)), Rat(static_cast<long>(c))}});
  }
  return out;
}

std::vector<CurveParam> random_curves(const CurveFamily& family, std::size_t n, std::mt19937_64& rng) {
  return family.kind() == FamilyKind::Lines ? random_lines(n, rng) : random_parabolas(n, rng);
}

}  // namespace cutting_forge
