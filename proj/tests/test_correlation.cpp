#include <doctest.h>

#include <cmath>
#include <random>

#include "cutting_forge/correlation.hpp"
#include "generators.hpp"

using namespace cutting_forge;

namespace {

// Pr(A in F) by walking every subset and multiplying out its probability.
Rat weight_oracle(const UpSetSystem& sys, const Rat& p) {
  Rat sum(0);
  for (std::uint32_t x = 0; x < (std::uint32_t{1} << sys.m); ++x) {
    bool member = false;
    for (const auto& d : sys.defining) {
      bool sub = true;
      for (std::size_t e : d) sub = sub && (x >> (e - 1) & 1);
      member = member || sub;
    }
    if (!member) continue;
    Rat w(1);
    for (std::size_t e = 0; e < sys.m; ++e) w *= (x >> e & 1) ? p : Rat(1 - p);
    sum += w;
  }
  return sum;
}

UpSetSystem random_system(std::mt19937_64& rng, std::size_t m_max, std::size_t q_max) {
  UpSetSystem sys;
  sys.m = static_cast<std::size_t>(gen::integer(rng, 1, static_cast<std::int64_t>(m_max)));
  const auto q = gen::integer(rng, 1, static_cast<std::int64_t>(q_max));
  for (std::int64_t i = 0; i < q; ++i) {
    std::vector<std::size_t> d;
    for (std::size_t e = 1; e <= sys.m; ++e)
      if (gen::integer(rng, 0, 2) == 0) d.push_back(e);
    sys.defining.push_back(std::move(d));
  }
  return sys;
}

}  // namespace

TEST_SUITE("correlation") {
  TEST_CASE("filter_weight examples") {
    const UpSetSystem everything{3, {{}}};
    for (const Rat& p : {Rat(0), Rat(1, 3), Rat(1)}) CHECK(filter_weight(everything, p) == 1);
    const UpSetSystem first{2, {{1}}};
    CHECK(filter_weight(first, Rat(1, 2)) == Rat(1, 2));
    const UpSetSystem some{4, {{1, 2}, {3}}};
    CHECK(filter_weight(some, Rat(1)) == 1);
    CHECK(filter_weight(some, Rat(0)) == 0);
    CHECK(everything.u() == 0);
    CHECK(some.u() == 2);
  }

  TEST_CASE("precondition errors") {
    CHECK_THROWS_AS(filter_weight(UpSetSystem{2, {{3}}}, Rat(1, 2)), Error);
    CHECK_THROWS_AS(filter_weight(UpSetSystem{2, {{1}}}, Rat(3, 2)), Error);
    try {
      filter_weight_enumerated(UpSetSystem{25, {{1}}}, Rat(1, 2));
      FAIL("expected GroundSetTooLarge");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GroundSetTooLarge);
    }
    try {
      correlation_check(UpSetSystem{3, {}}, Rat(1, 2), Rat(1, 4));
      FAIL("expected EmptyFilter");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptyFilter);
    }
    CHECK_THROWS_AS(correlation_check(UpSetSystem{2, {{1}}}, Rat(1, 4), Rat(1, 2)), Error);
  }

  TEST_CASE("correlation_check examples") {
    const UpSetSystem first{2, {{1}}};
    auto r = correlation_check(first, Rat(1, 2), Rat(1, 4));
    CHECK(r.ratio == Rat(1, 2));
    CHECK(r.bound == Rat(1, 2));
    CHECK(r.holds);
    r = correlation_check(first, Rat(2, 3), Rat(2, 3));
    CHECK(r.ratio == 1);
    CHECK(r.bound == 1);
    const UpSetSystem pair{3, {{1, 2}}};
    r = correlation_check(pair, Rat(1, 2), Rat(1, 4));
    CHECK(r.bound == Rat(1, 4));
    CHECK(r.ratio == weight_oracle(pair, Rat(1, 4)) / weight_oracle(pair, Rat(1, 2)));
    CHECK(r.holds);
  }

  TEST_CASE("three weight computations agree") {
    std::mt19937_64 rng(44);
    for (int i = 0; i < 300; ++i) {
      const auto sys = random_system(rng, 9, 8);
      Rat p(gen::integer(rng, 0, 16), 16);
      p.canonicalize();
      const Rat w = weight_oracle(sys, p);
      CHECK(filter_weight_enumerated(sys, p) == w);
      CHECK(filter_weight_inclusion_exclusion(sys, p) == w);
      CHECK(filter_weight(sys, p) == w);
    }
    // More than 12 defining sets take the enumeration path.
    UpSetSystem many{6, {}};
    for (std::size_t e = 1; e <= 6; ++e) many.defining.push_back({e});
    for (std::size_t e = 1; e < 6; ++e) many.defining.push_back({e, e + 1});
    for (std::size_t e = 1; e < 5; ++e) many.defining.push_back({e, e + 2});
    CHECK(filter_weight(many, Rat(1, 3)) == weight_oracle(many, Rat(1, 3)));
  }

  TEST_CASE("filters are upward closed and weights monotone in p") {
    std::mt19937_64 rng(45);
    for (int i = 0; i < 200; ++i) {
      const auto sys = random_system(rng, 8, 5);
      for (std::uint32_t x = 0; x < (std::uint32_t{1} << sys.m); ++x) {
        if (!sys.contains(x)) continue;
        for (std::size_t e = 0; e < sys.m; ++e) CHECK(sys.contains(x | (std::uint32_t{1} << e)));
      }
      Rat prev(-1);
      for (int k = 0; k <= 8; ++k) {
        Rat q(k, 8);
        q.canonicalize();
        const Rat w = filter_weight(sys, q);
        CHECK(w >= prev);
        CHECK(w >= 0);
        CHECK(w <= 1);
        prev = w;
      }
    }
  }

  TEST_CASE("Monte Carlo frequency within three standard errors") {
    std::mt19937_64 rng(46);
    const UpSetSystem sys{6, {{1, 2}, {3, 4, 5}, {2, 6}}};
    const Rat p(2, 5);
    const double w = filter_weight(sys, p).get_d();
    std::bernoulli_distribution coin(0.4);
    const int draws = 100000;
    int hits = 0;
    for (int i = 0; i < draws; ++i) {
      std::uint32_t x = 0;
      for (std::size_t e = 0; e < sys.m; ++e)
        if (coin(rng)) x |= std::uint32_t{1} << e;
      hits += sys.contains(x);
    }
    const double se = std::sqrt(w * (1 - w) / draws);
    CHECK(std::fabs(hits / static_cast<double>(draws) - w) <= 3 * se);
  }

  TEST_CASE("antichain enumeration counts") {
    // Nonempty antichains of subsets of an m-set: Dedekind numbers minus one.
    CHECK(all_antichain_systems(1).size() == 2);
    CHECK(all_antichain_systems(2).size() == 5);
    CHECK(all_antichain_systems(3).size() == 19);
    CHECK(all_antichain_systems(4).size() == 167);
  }

  TEST_CASE("fuzz sweep finds no violation") {
    const auto rep = correlation_fuzz(4, 6, 4, 500, 1);
    CHECK(rep.violations.empty());
    CHECK(rep.exhaustive_systems == 193);
    CHECK(rep.exhaustive_checks == 193 * 28);
    CHECK(rep.random_checks == 500);
    CHECK(rep.equalities > 0);
    const auto one = correlation_fuzz(1, 1, 1, 0, 1);
    CHECK(one.violations.empty());
    CHECK(one.exhaustive_systems == 2);
  }
}
