#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cutting_forge/cli.hpp"
#include "cutting_forge/io.hpp"

using namespace cutting_forge;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t occurrences(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "cutting_forge_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    CHECK(run({"cut", "--random", "20", "--r", "1/2"}).code == 2);
    CHECK(run({"cut", "--random", "20"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({"incidence", "--grid", "30"}).code == 2);
    CHECK(run({"correlate", "--m", "3", "--defining", "1;2", "--p", "1/4", "--ptilde", "1/2"}).code == 2);
    const auto fuzz = run({"correlate", "--fuzz", "--m", "4", "--trials", "200", "--json"});
    CHECK(fuzz.code == 0);
    CHECK(parse_json(fuzz.out)["violations"] == 0);
    CHECK(fuzz.err.find("manifest") != std::string::npos);
  }

  TEST_CASE("decompose a file") {
    const auto dir = scratch_dir();
    const auto in = (dir / "two.json").string();
    write_file(in, R"({"family":"lines","params":[["1","0"],["-1","0"]]})");
    const auto r = run({"decompose", "--input", in, "--json", "--manifest", (dir / "m.json").string()});
    CHECK(r.code == 0);
    const Json j = parse_json(r.out);
    CHECK(j["census"]["total"] == 13);
    const Json m = parse_json(read_file((dir / "m.json").string()));
    CHECK(m["subcommand"] == "decompose");
    CHECK(m["input_digest"] == fnv1a_hex(read_file(in)));
    CHECK(run({"decompose", "--input", (dir / "missing.json").string()}).code == 2);
  }

  TEST_CASE("moment and tailbound") {
    const auto m = run({"moment", "--n", "10", "--p", "1/2", "--d", "2", "--json"});
    CHECK(m.code == 0);
    CHECK(parse_json(m.out)["exact"] == "55/2");
    const auto t = run({"tailbound", "--random", "30", "--r", "5", "--t", "0,1,8", "--trials", "20"});
    CHECK(t.code == 0);
    CHECK(t.out.rfind("t,mean,stderr\n", 0) == 0);
    CHECK(occurrences(t.out, "\n") == 4);
  }

  TEST_CASE("render element counts") {
    const auto dir = scratch_dir();
    const auto in = (dir / "render.json").string();
    write_file(in, R"({"family":"lines","params":[["1","0"],["-1","0"]]})");
    const auto r = run({"render", "--input", in, "--viewport", "-4:4:-4:4"});
    CHECK(r.code == 0);
    CHECK(occurrences(r.out, "class=\"curve\"") == 2);
    CHECK(occurrences(r.out, "class=\"wall\"") == 2);
    write_file(in, R"({"family":"lines","params":[]})");
    const auto e = run({"render", "--input", in});
    CHECK(e.code == 0);
    CHECK(occurrences(e.out, "class=\"curve\"") == 0);
    CHECK(occurrences(e.out, "class=\"frame\"") == 1);
    CHECK(occurrences(e.out, "class=\"wall\"") == 0);
    CHECK(run({"render", "--input", in, "--viewport", "1:0:0:1"}).code == 2);
  }

  TEST_CASE("outputs are byte-identical across runs") {
    const std::vector<std::vector<std::string>> cmds{
        {"decompose", "--random", "12", "--json", "--seed", "5"},
        {"cut", "--random", "40", "--r", "4", "--json", "--seed", "5"},
        {"shatter", "--lines", "8", "--zmax", "6"},
        {"incidence", "--grid", "8,27", "--json"},
    };
    for (const auto& c : cmds) {
      const auto a = run(c), b = run(c);
      CHECK(a.code == 0);
      CHECK(a.out == b.out);
      CHECK_FALSE(a.out.empty());
    }
  }

  TEST_CASE("version") { CHECK_FALSE(library_version().empty()); }
}
