#include <doctest.h>

#include <algorithm>
#include <random>

#include "cutting_forge/decomposition.hpp"
#include "cutting_forge/io.hpp"
#include "cutting_forge/random.hpp"
#include "generators.hpp"

using namespace cutting_forge;

namespace {

const CurveFamily kLines(FamilyKind::Lines);
const CurveFamily kParabolas(FamilyKind::Parabolas);

CurveParam L(long a, long b) { return {{Rat(a), Rat(b)}}; }

std::size_t count_kind(const CellComplex& c, const std::vector<std::size_t>& idx, CellKind k) {
  return static_cast<std::size_t>(
      std::count_if(idx.begin(), idx.end(), [&](std::size_t i) { return c.cells()[i].kind() == k; }));
}

std::vector<std::string> dumped(const std::vector<Cell>& cells) {
  std::vector<std::string> out;
  for (const auto& c : cells) out.push_back(to_json(c).dump());
  std::sort(out.begin(), out.end());
  return out;
}

// x2-extent of a cell, closed.
std::pair<Ext, Ext> extent(const Cell& cell) {
  return std::visit(
      [](const auto& c) -> std::pair<Ext, Ext> {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PointCell>) return {Ext(c.p.x2), Ext(c.p.x2)};
        else if constexpr (std::is_same_v<T, VerticalCell>) return {Ext(c.at), Ext(c.at)};
        else return {c.left, c.right};
      },
      cell.shape);
}

}  // namespace

TEST_SUITE("decomposition") {
  TEST_CASE("census of tiny arrangements") {
    const CellComplex one(kLines, {L(0, 0)});
    CHECK(one.census().point == 0);
    CHECK(one.census().vert_e == 0);
    CHECK(one.census().arc == 1);
    CHECK(one.census().twodim == 2);
    CHECK(one.size() == 3);

    const CellComplex two(kLines, {L(1, 0), L(-1, 0)});
    CHECK(two.census().point == 1);
    CHECK(two.census().vert_e == 2);
    CHECK(two.census().arc == 4);
    CHECK(two.census().twodim == 6);
    CHECK(two.size() == 13);
    CHECK(verify_no_crossing(two).empty());

    const CellComplex none(kLines, {});
    CHECK(none.size() == 1);
    CHECK(none.cells()[0].kind() == CellKind::TwoDim);
    CHECK(verify_no_crossing(none).empty());
  }

  TEST_CASE("duplicates are removed") {
    const CellComplex c(kLines, {L(0, 0), L(0, 0)});
    CHECK(c.params().size() == 1);
    CHECK(c.size() == 3);
  }

  TEST_CASE("locate examples") {
    const CellComplex one(kLines, {L(0, 0)});
    auto hit = one.locate(Rat(5), Rat(0));
    REQUIRE(hit.size() == 1);
    const auto& up = std::get<TwoDimCell>(one.cells()[hit[0]].shape);
    CHECK(up.bottom.has_value());
    CHECK_FALSE(up.top.has_value());

    const CellComplex two(kLines, {L(1, 0), L(-1, 0)});
    hit = two.locate(Rat(0), Rat(0));
    REQUIRE(hit.size() == 1);
    CHECK(two.cells()[hit[0]].kind() == CellKind::Point);
    hit = two.locate(Rat(1, 2), Rat(0));
    REQUIRE(hit.size() == 1);
    const auto& wall = two.cells()[hit[0]];
    CHECK(wall.kind() == CellKind::VerticalExtra);
    CHECK(std::get<VerticalCell>(wall.shape).direction == Direction::Up);
  }

  TEST_CASE("a merged cell is reported as crossed") {
    const CellComplex one(kLines, {L(0, 0)});
    std::vector<Cell> cells = one.cells();
    // Replace the two half-planes by the whole plane.
    std::erase_if(cells, [](const Cell& c) { return c.kind() == CellKind::TwoDim; });
    Cell plane;
    plane.shape = TwoDimCell{std::nullopt, std::nullopt, Ext::neg_inf(), Ext::pos_inf(), LeftWall::None};
    cells.push_back(plane);
    CHECK_FALSE(verify_no_crossing(kLines, one.params(), cells).empty());
  }

  TEST_CASE("random complexes: not crossed, cover, zones match brute force") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 24; ++trial) {
      const bool parab = trial % 3 == 2;
      const auto& f = parab ? kParabolas : kLines;
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
      // Small coefficients force concurrencies and shared abscissae.
      const auto S = parab ? gen::small_parabolas(rng, n) : gen::small_lines(rng, n);
      const CellComplex c(f, S);
      CHECK(verify_no_crossing(c).empty());
      CHECK(c.census().total() == c.size());

      for (int q = 0; q < 300; ++q) {
        const Rat x1 = gen::rational(rng, 30, 4), x2 = gen::rational(rng, 30, 4);
        const auto hit = c.locate(x1, x2);
        CHECK_FALSE(hit.empty());
        for (std::size_t i : hit) CHECK(contains(c.cells()[i].region(), x1, x2));
        // Open two-dimensional cells are disjoint.
        CHECK(count_kind(c, hit, CellKind::TwoDim) <= 1);
      }

      const auto H = parab ? gen::small_parabolas(rng, 6) : gen::small_lines(rng, 6);
      std::vector<QuadPoly> hs;
      for (const auto& s : H) hs.push_back(f.branch(1, s));
      const auto sets = c.crossing_sets(hs);
      REQUIRE(sets.size() == c.size());
      for (std::size_t i = 0; i < c.size(); ++i) CHECK(sets[i] == crossing_set(f, H, c.cells()[i].region()));
    }
  }

  TEST_CASE("cover holds at inward-perturbed cell corners") {
    std::mt19937_64 rng(7);
    const auto S = gen::small_lines(rng, 6);
    const CellComplex c(kLines, S);
    int probes = 0;
    for (const auto& cell : c.cells()) {
      const auto w = rational_witness(cell.region());
      if (!w) continue;
      ++probes;
      const auto hit = c.locate(w->first, w->second);
      CHECK(std::find_if(hit.begin(), hit.end(), [&](std::size_t i) { return &c.cells()[i] == &cell; }) != hit.end());
    }
    CHECK(probes > 10);
  }

  TEST_CASE("two-dimensional cells have pairwise disjoint interiors") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
      const auto S = trial % 2 ? gen::small_parabolas(rng, 5) : gen::small_lines(rng, 8);
      const CellComplex c(trial % 2 ? kParabolas : kLines, S);
      std::vector<Region> two;
      for (const auto& cell : c.cells())
        if (cell.kind() == CellKind::TwoDim) two.push_back(cell.region());
      for (std::size_t i = 0; i < two.size(); ++i)
        for (std::size_t j = i + 1; j < two.size(); ++j) CHECK(is_empty(intersect(two[i], two[j])));
    }
  }

  TEST_CASE("windowed complex agrees with the full one inside the window") {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 12; ++trial) {
      const bool parab = trial % 2 == 1;
      const auto& f = parab ? kParabolas : kLines;
      const auto S = parab ? gen::small_parabolas(rng, 6) : gen::small_lines(rng, 9);
      const CellComplex full(f, S);
      Rat lo = gen::rational(rng, 4, 2), hi = gen::rational(rng, 4, 2);
      if (hi < lo) std::swap(lo, hi);
      const CellComplex win(f, S, Ext(lo), Ext(hi));
      CHECK(win.windowed());
      auto inside = [&](const std::vector<Cell>& cells) {
        std::vector<Cell> out;
        for (const auto& cell : cells) {
          const auto [l, r] = extent(cell);
          if (Ext(lo) <= l && r <= Ext(hi)) out.push_back(cell);
        }
        return dumped(out);
      };
      CHECK(inside(full.cells()) == inside(win.cells()));
      // Zones stay exact for cells meeting the window.
      const auto H = parab ? gen::small_parabolas(rng, 4) : gen::small_lines(rng, 4);
      std::vector<QuadPoly> hs;
      for (const auto& s : H) hs.push_back(f.branch(1, s));
      const auto sets = win.crossing_sets(hs);
      for (std::size_t i = 0; i < win.size(); ++i) {
        const auto [l, r] = extent(win.cells()[i]);
        if (Ext(lo) <= l && r <= Ext(hi)) CHECK(sets[i] == crossing_set(f, H, win.cells()[i].region()));
      }
    }
    CHECK_THROWS_AS(CellComplex(kLines, {L(0, 0)}, Ext(Rat(1)), Ext(Rat(0))), Error);
  }

  TEST_CASE("census bounds per left-wall family") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {4, 8, 16, 32}) {
      const CellComplex c(kLines, random_lines(n, rng));
      const Census& k = c.census();
      CHECK(k.f1 + k.f2 + k.f3 + k.f4 == k.twodim);
      CHECK(k.f1 <= 2 * n);
      CHECK(k.f2 == 0);
      CHECK(k.f3 <= n * n);
      CHECK(k.vert_u == 0);
    }
  }

  TEST_CASE("census counted from the intersection points") {
    // V = n(n-1)/2 crossings in general position. Each adds one point cell,
    // at most two walls, splits two lines and each wall end splits one more
    // arc, and every wall or crossing adds at most one face.
    std::mt19937_64 rng(4);
    for (std::size_t n : {2, 5, 8, 16, 32, 64}) {
      const CellComplex c(kLines, random_lines(n, rng));
      const std::size_t V = n * (n - 1) / 2;
      CHECK(c.census().point == V);
      CHECK(c.census().vert_e <= 2 * V);
      CHECK(c.census().arc <= n + 2 * V + 2 * V);
      CHECK(c.census().twodim <= 1 + n + 3 * V);
      CHECK(c.size() <= 10 * V + 2 * n + 1);
    }
  }

  TEST_CASE("census_fit slopes") {
    const std::vector<std::size_t> sizes{4, 8, 16, 32};
    const auto fit = census_fit(kLines, sizes, 2, 9);
    CHECK(fit.slope >= 1.7);
    CHECK(fit.slope <= 2.1);
    const auto parallel = census_fit(kLines, sizes, 1, 9, [](std::size_t n, std::mt19937_64&) {
      std::vector<CurveParam> out;
      for (std::size_t i = 0; i < n; ++i) out.push_back(L(1, static_cast<long>(i)));
      return out;
    });
    CHECK(parallel.slope == doctest::Approx(1.0).epsilon(0.05));
  }

  TEST_CASE("identical sets give identical complexes") {
    std::mt19937_64 rng(12);
    auto S = gen::small_lines(rng, 8);
    const std::string a = to_json(CellComplex(kLines, S)).dump();
    std::shuffle(S.begin(), S.end(), rng);
    S.push_back(S.front());
    CHECK(to_json(CellComplex(kLines, S)).dump() == a);
  }
}
