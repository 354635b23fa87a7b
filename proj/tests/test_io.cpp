#include <doctest.h>

#include <random>

#include "cutting_forge/io.hpp"
#include "generators.hpp"

using namespace cutting_forge;

TEST_SUITE("io") {
  TEST_CASE("scalar round trips") {
    std::mt19937_64 rng(81);
    for (int i = 0; i < 500; ++i) {
      const Rat x = gen::rational(rng, 1000, 97);
      CHECK(rat_from_json(to_json(x)) == x);
      const QuadExt q = gen::quadext(rng);
      CHECK(quadext_from_json(to_json(q)) == q);
    }
    CHECK(to_json(parse_rat("-3/6")) == "-1/2");
    CHECK(rat_from_json(Json(7)) == 7);
    CHECK(rat_from_json(Json("0.25")) == Rat(1, 4));
    CHECK(to_json(Ext::neg_inf()) == "-inf");
    CHECK(ext_from_json(Json("+inf")) == Ext::pos_inf());
    CHECK(ext_from_json(to_json(Ext(Rat(5, 3)))) == Ext(Rat(5, 3)));
    CHECK_THROWS_AS(rat_from_json(Json("1/0")), Error);
    CHECK_THROWS_AS(rat_from_json(Json::array()), Error);
  }

  TEST_CASE("curve sets") {
    const Json j = parse_json(R"({"family":"parabolas","params":[["1","0","-2"],[0,"1/2",3]]})");
    const CurveSet s = curves_from_json(j);
    CHECK(s.family.kind() == FamilyKind::Parabolas);
    REQUIRE(s.params.size() == 2);
    CHECK(s.params[1].coeffs[1] == Rat(1, 2));
    CHECK(curves_from_json(to_json(s.family, s.params)).params == s.params);
    CHECK_THROWS_AS(curves_from_json(parse_json(R"({"family":"lines","params":[["1"]]})")), Error);
    CHECK_THROWS_AS(curves_from_json(parse_json(R"({"family":"circles","params":[]})")), Error);
  }

  TEST_CASE("incidence instances and set systems") {
    IncidenceInstance inst;
    inst.points = {{Rat(1), Rat(2)}, {Rat(-1, 3), Rat(0)}};
    inst.curves = {{{Rat(1), Rat(-1)}}};
    inst.edges = std::vector<Edge>{{0, 0}};
    const auto back = incidence_from_json(to_json(inst));
    CHECK(back.points == inst.points);
    CHECK(back.curves == inst.curves);
    CHECK(back.edges == inst.edges);
    CHECK_THROWS_AS(incidence_from_json(parse_json(R"({"family":"lines","points":[],"params":[],"edges":[[0,0]]})")),
                    Error);

    const SetSystem sys{4, {{1, 2}, {}, {4}}};
    const auto sb = set_system_from_json(to_json(sys));
    CHECK(sb.ground == 4);
    CHECK(sb.sets == sys.sets);
    CHECK_THROWS_AS(set_system_from_json(parse_json(R"({"ground":2,"sets":[[3]]})")), Error);
  }

  TEST_CASE("parse_defining") {
    using V = std::vector<std::vector<std::size_t>>;
    CHECK(parse_defining("1,2;3") == V{{1, 2}, {3}});
    CHECK(parse_defining("") == V{{}});
    CHECK(parse_defining("4") == V{{4}});
    CHECK_THROWS_AS(parse_defining("1,x"), Error);
  }

  TEST_CASE("fnv1a reference vectors") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
  }

  TEST_CASE("csv rows and complex documents") {
    const CurveFamily lines(FamilyKind::Lines);
    const CellComplex c(lines, {{{Rat(1), Rat(0)}}, {{Rat(-1), Rat(0)}}});
    CHECK(census_csv_row(2, c.census()) == "2,1,0,2,4,6,13");
    const Json j = to_json(c);
    CHECK(j["cells"].size() == 13);
    CHECK(j["census"]["total"] == 13);
    CHECK_THROWS_AS(parse_json("{"), Error);
    CHECK_THROWS_AS(read_file("/nonexistent/file.json"), Error);
  }
}
