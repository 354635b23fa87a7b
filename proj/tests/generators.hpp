#pragma once

// Small hand-rolled generators shared by the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "cutting_forge/algebra.hpp"
#include "cutting_forge/families.hpp"

namespace gen {

using cutting_forge::Rat;

inline std::int64_t integer(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline Rat rational(std::mt19937_64& rng, std::int64_t num = 20, std::int64_t den = 6) {
  Rat r(integer(rng, -num, num), integer(rng, 1, den));
  r.canonicalize();
  return r;
}

inline cutting_forge::QuadExt quadext(std::mt19937_64& rng) {
  static const long radicands[] = {0, 2, 3, 5, 6, 7};
  const long d = radicands[integer(rng, 0, 5)];
  if (d == 0) return cutting_forge::QuadExt(rational(rng));
  return cutting_forge::QuadExt(rational(rng), rational(rng), cutting_forge::Int(d));
}

// Small-integer lines, possibly with repeated slopes and concurrencies.
inline std::vector<cutting_forge::CurveParam> small_lines(std::mt19937_64& rng, std::size_t n, std::int64_t span = 4) {
  std::vector<cutting_forge::CurveParam> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({{Rat(integer(rng, -span, span)), Rat(integer(rng, -span, span))}});
  return out;
}

inline std::vector<cutting_forge::CurveParam> small_parabolas(std::mt19937_64& rng, std::size_t n,
                                                              std::int64_t span = 3) {
  std::vector<cutting_forge::CurveParam> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({{Rat(integer(rng, -span, span)), Rat(integer(rng, -span, span)),
                    Rat(integer(rng, -span, span), 2)}});
  for (auto& s : out)
    for (auto& c : s.coeffs) c.canonicalize();
  return out;
}

}  // namespace gen
