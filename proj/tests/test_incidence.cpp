#include <doctest.h>

#include <cmath>
#include <random>

#include "cutting_forge/incidence.hpp"
#include "generators.hpp"

using namespace cutting_forge;

namespace {

CurveParam L(long a, long b) { return {{Rat(a), Rat(b)}}; }
RatPoint pt(long x1, long x2) { return {Rat(x1), Rat(x2)}; }

// Any two points share at most one curve, checked pair by pair.
bool pairwise_k22_free(const IncidenceInstance& inst, const std::vector<Edge>& edges) {
  std::vector<std::vector<std::size_t>> nb(inst.points.size());
  for (const auto& e : edges) nb[e.point].push_back(e.curve);
  for (std::size_t i = 0; i < nb.size(); ++i) {
    for (std::size_t j = i + 1; j < nb.size(); ++j) {
      std::size_t common = 0;
      for (std::size_t a : nb[i])
        for (std::size_t b : nb[j]) common += a == b;
      if (common >= 2) return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("incidence") {
  TEST_CASE("count_incidences examples") {
    IncidenceInstance one;
    one.points = {pt(0, 0)};
    one.curves = {L(0, 0)};
    CHECK(count_incidences(one).count == 1);

    IncidenceInstance grid;
    for (long x2 = 0; x2 < 3; ++x2)
      for (long x1 = 0; x1 < 3; ++x1) grid.points.push_back(pt(x1, x2));
    for (long a = 0; a <= 1; ++a)
      for (long b = 0; b <= 2; ++b) grid.curves.push_back(L(a, b));
    const auto c = count_incidences(grid);
    CHECK(c.count == count_incidences_brute(grid).count);
    // Slope 0 lines hit 3 points each; slope 1 lines hit 3, 2, 1.
    CHECK(c.count == 15);

    IncidenceInstance on_line;
    for (long x2 = -5; x2 <= 5; ++x2) on_line.points.push_back({Rat(2 * x2 + 1), Rat(x2)});
    on_line.curves = {L(2, 1)};
    CHECK(count_incidences(on_line).count == 11);
  }

  TEST_CASE("both counting strategies match brute force") {
    std::mt19937_64 rng(61);
    for (int i = 0; i < 60; ++i) {
      IncidenceInstance inst;
      inst.family = CurveFamily(i % 3 == 0 ? FamilyKind::Parabolas : FamilyKind::Lines);
      inst.curves = i % 3 == 0 ? gen::small_parabolas(rng, 12, 2) : gen::small_lines(rng, 12, 3);
      // Few abscissae in some instances, many in others, to exercise both paths.
      const std::int64_t xs = i % 2 ? 2 : 12;
      for (int k = 0; k < 40; ++k) {
        const Rat x2(gen::integer(rng, -xs, xs));
        const auto& s = inst.curves[static_cast<std::size_t>(gen::integer(rng, 0, 11))];
        const Rat x1 = gen::integer(rng, 0, 2) ? inst.family.branch(1, s)(x2) : Rat(gen::integer(rng, -9, 9));
        inst.points.push_back({x1, x2});
      }
      inst = deduplicate(inst);
      const auto fast = count_incidences(inst);
      const auto slow = count_incidences_brute(inst);
      CHECK(fast.count == slow.count);
      CHECK(fast.edges == slow.edges);
    }
  }

  TEST_CASE("deduplicate keeps first occurrences") {
    IncidenceInstance inst;
    inst.points = {pt(1, 1), pt(2, 2), pt(1, 1)};
    inst.curves = {L(1, 0), L(1, 0), L(0, 2)};
    inst.edges = std::vector<Edge>{{2, 1}, {0, 0}, {1, 2}};
    const auto d = deduplicate(inst);
    CHECK(d.points.size() == 2);
    CHECK(d.curves.size() == 2);
    REQUIRE(d.edges);
    CHECK(*d.edges == std::vector<Edge>{{0, 0}, {1, 1}});
  }

  TEST_CASE("is_kkk_free") {
    CHECK(is_kkk_free(0, 0, {}, 1).free);
    CHECK(is_kkk_free(3, 3, {}, 1).free);
    std::vector<Edge> k33;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) k33.push_back({i, j});
    const auto r = is_kkk_free(3, 3, k33, 3);
    CHECK_FALSE(r.free);
    REQUIRE(r.witness);
    CHECK(r.witness->points == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.witness->curves == std::vector<std::size_t>{0, 1, 2});
    CHECK(is_kkk_free(3, 3, k33, 4).free);
    CHECK_THROWS_AS(is_kkk_free(1, 1, {}, 0), Error);
    try {
      std::vector<Edge> big;
      for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t j = 0; j < 30; ++j)
          if ((i + j) % 3) big.push_back({i, j});
      is_kkk_free(30, 30, big, 12, 50);
      FAIL("expected the node budget to run out");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CombinatorialBudgetExceeded);
    }
  }

  TEST_CASE("witnesses are genuine complete bipartite subgraphs") {
    std::mt19937_64 rng(62);
    for (int i = 0; i < 100; ++i) {
      const std::size_t m = 8, n = 8, k = 2 + static_cast<std::size_t>(i % 2);
      std::vector<Edge> edges;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (gen::integer(rng, 0, 9) < 5) edges.push_back({a, b});
      const auto r = is_kkk_free(m, n, edges, k);
      // Brute force over k-subsets of points.
      bool brute_free = true;
      for (std::uint32_t mask = 0; mask < (1u << m) && brute_free; ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
        std::size_t common = 0;
        for (std::size_t b = 0; b < n; ++b) {
          bool all = true;
          for (std::size_t a = 0; a < m; ++a)
            if (mask >> a & 1) all = all && std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end();
          common += all;
        }
        if (common >= k) brute_free = false;
      }
      CHECK(r.free == brute_free);
      if (!r.free) {
        REQUIRE(r.witness);
        for (std::size_t a : r.witness->points)
          for (std::size_t b : r.witness->curves) CHECK(std::find(edges.begin(), edges.end(), Edge{a, b}) != edges.end());
      }
    }
  }

  TEST_CASE("point/line instances are K22-free up to n = 200") {
    for (const auto& inst : incidence_fuzz_instances(12, 200, 5)) {
      const auto c = count_incidences(inst);
      const auto r = is_kkk_free(inst.points.size(), inst.curves.size(), c.edges, 2);
      CHECK(r.free);
      CHECK(r.free == pairwise_k22_free(inst, c.edges));
    }
  }

  TEST_CASE("bound formulas") {
    CHECK(zarankiewicz_bound(64, 64, 2, 2, 1) == doctest::Approx(384));
    CHECK(zarankiewicz_bound(1, 100, 2, 2, 1) <= 2 * 100 + 1);
    CHECK(zarankiewicz_bound(64, 64, 3, 2, 2) == doctest::Approx(2 * (std::pow(64.0, 7.0 / 5) + 128)));
    CHECK_THROWS_AS(zarankiewicz_bound(4, 4, 1, 2, 1), Error);
    CHECK(kst_bound(7, 9, 1, 2) == doctest::Approx(2 * (7 + 9)));
    CHECK(kst_bound(16, 16, 2, 1) == doctest::Approx(64 + 16));
    CHECK(kst_bound(5, 1, 3, 1) == doctest::Approx(6));
  }

  TEST_CASE("shatter_function examples") {
    const SetSystem one{5, {{1, 3}}};
    auto p = shatter_function(one, 5);
    for (std::size_t z = 1; z <= 5; ++z) CHECK(p.values[z - 1] == 1);
    const SetSystem one_plus_empty{5, {{1, 3}, {}}};
    p = shatter_function(one_plus_empty, 5);
    for (std::size_t z = 1; z <= 5; ++z) CHECK(p.values[z - 1] == 2);
    SetSystem singletons{7, {{}}};
    for (std::size_t e = 1; e <= 7; ++e) singletons.sets.push_back({e});
    p = shatter_function(singletons, 7);
    for (std::size_t z = 1; z <= 7; ++z) CHECK(p.values[z - 1] == z + 1);
    CHECK_THROWS_AS(shatter_function(SetSystem{21, {}}, 3), Error);
  }

  TEST_CASE("shatter profiles are monotone and at most 2^z") {
    std::mt19937_64 rng(63);
    for (int i = 0; i < 20; ++i) {
      SetSystem s{10, {}};
      for (int k = 0; k < 30; ++k) {
        std::vector<std::size_t> set;
        for (std::size_t e = 1; e <= 10; ++e)
          if (gen::integer(rng, 0, 1)) set.push_back(e);
        s.sets.push_back(set);
      }
      const auto p = shatter_function(s, 10);
      for (std::size_t z = 1; z <= 10; ++z) {
        CHECK(p.values[z - 1] <= (std::size_t{1} << z));
        if (z > 1) CHECK(p.values[z - 1] >= p.values[z - 2]);
      }
    }
  }

  TEST_CASE("line neighbourhoods shatter quadratically") {
    const auto pl = dual_line_system(12, 10, 3);
    const auto sys = curve_neighbourhoods(CurveFamily(FamilyKind::Lines), pl.points, pl.lines);
    const auto p = shatter_function(sys, 12);
    // Every pair of points is cut out by its own line.
    for (std::size_t z = 2; z < 12; ++z) CHECK(p.values[z - 1] >= z * (z - 1) / 2);
    CHECK(p.slope <= 2.1);
  }

  TEST_CASE("grid instances") {
    const auto g8 = generate_grid_st(8);
    CHECK(g8.curves.size() == 8);
    const auto c8 = count_incidences(g8);
    CHECK(c8.count >= 16);
    CHECK(c8.count == count_incidences_brute(g8).count);
    CHECK(is_kkk_free(g8.points.size(), g8.curves.size(), c8.edges, 2).free);
    CHECK(pairwise_k22_free(g8, c8.edges));
    CHECK(count_incidences(generate_grid_st(27)).count >= 81);
    try {
      generate_grid_st(30);
      FAIL("expected NotACube");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotACube);
    }
  }

  TEST_CASE("exponent_fit") {
    std::vector<ExponentSample> s;
    for (std::size_t N : {27, 64, 125, 216}) {
      const auto g = generate_grid_st(N);
      s.push_back({double(g.points.size()), double(g.curves.size()), double(count_incidences(g).count)});
    }
    const double slope = exponent_fit(s);
    CHECK(slope >= 1.25);
    CHECK(slope <= 1.40);
    const std::vector<ExponentSample> flat{{1, 2, 5}, {1, 4, 5}, {1, 8, 5}};
    CHECK(exponent_fit(flat) == doctest::Approx(0).epsilon(1e-9));
    const std::vector<ExponentSample> linear{{1, 2, 2}, {1, 4, 4}, {1, 8, 8}};
    CHECK(exponent_fit(linear) == doctest::Approx(1));
    CHECK_THROWS_AS(exponent_fit(std::vector<ExponentSample>{{1, 2, 2}, {1, 2, 2}, {1, 3, 3}}), Error);
  }
}
