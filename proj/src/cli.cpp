#include "cutting_forge/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cutting_forge/correlation.hpp"
#include "cutting_forge/cutting.hpp"
#include "cutting_forge/decomposition.hpp"
#include "cutting_forge/error.hpp"
#include "cutting_forge/incidence.hpp"
#include "cutting_forge/io.hpp"
#include "cutting_forge/random.hpp"
#include "cutting_forge/render.hpp"

#ifndef CUTTING_FORGE_VERSION
#define CUTTING_FORGE_VERSION "0.0.0"
#endif

namespace cutting_forge {

std::string library_version() { return CUTTING_FORGE_VERSION; }

namespace {

// Raised for bad flag values that CLI11 cannot see.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = kDefaultSeed;
  bool json = false;
  std::string out;
  std::string manifest;
};

struct Context {
  std::string subcommand;
  std::vector<std::string> flags;
  Common common;
  std::string digest;
  std::ostream& out;
  std::ostream& err;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed")->capture_default_str();
  sub->add_flag("--json", c.json, "machine-readable output on stdout");
  sub->add_option("--out", c.out, "output file");
  sub->add_option("--manifest", c.manifest, "where to write the run manifest (default: <out>.manifest.json or stderr)");
}

Rat parse_rat_flag(const std::string& name, const std::string& text) {
  try {
    return parse_rat(text);
  } catch (const Error&) {
    throw UsageError("--" + name + ": not a rational: '" + text + "'");
  }
}

std::vector<Rat> parse_rat_list(const std::string& name, const std::string& text) {
  std::vector<Rat> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rat_flag(name, item));
  if (out.empty()) throw UsageError("--" + name + ": empty list");
  return out;
}

struct CurveSource {
  std::string input;
  std::string family;
  std::size_t random = 0;

  void add(CLI::App* sub) {
    sub->add_option("--input", input, "curve set JSON");
    sub->add_option("--family", family, "lines | parabolas");
    sub->add_option("--random", random, "use N seeded random curves instead of --input");
  }

  CurveSet load(Context& ctx, std::size_t default_random = 0) const {
    CurveSet set;
    if (!input.empty()) {
      if (random != 0) throw UsageError("--input and --random are exclusive");
      const std::string text = read_file(input);
      ctx.digest = fnv1a_hex(text);
      set = curves_from_json(parse_json(text));
      if (!family.empty() && parse_family(family) != set.family.kind())
        throw UsageError("--family disagrees with the input file");
      return set;
    }
    const std::size_t n = random != 0 ? random : default_random;
    if (n == 0) throw UsageError("need --input FILE or --random N");
    set.family = CurveFamily(family.empty() ? FamilyKind::Lines : parse_family(family));
    std::mt19937_64 rng(derive_seed(ctx.common.seed, 1));
    set.params = random_curves(set.family, n, rng);
    ctx.digest = fnv1a_hex("random:" + std::string(to_string(set.family.kind())) + ":" + std::to_string(n) + ":" +
                           std::to_string(ctx.common.seed));
    return set;
  }
};

void emit(Context& ctx, const std::string& text) {
  ctx.out << text;
  if (!text.empty() && text.back() != '\n') ctx.out << '\n';
}

void write_manifest(Context& ctx, double seconds) {
  Json m;
  m["subcommand"] = ctx.subcommand;
  m["flags"] = ctx.flags;
  m["seed"] = ctx.common.seed;
  m["version"] = library_version();
  m["input_digest"] = ctx.digest;
  m["duration_s"] = std::round(seconds * 1000) / 1000;
  const std::string doc = m.dump();
  std::string path = ctx.common.manifest;
  if (path.empty() && !ctx.common.out.empty()) path = ctx.common.out + ".manifest.json";
  if (path.empty() || path == "-") {
    ctx.err << "manifest " << doc << '\n';
  } else {
    write_file(path, doc + "\n");
  }
}

// ---- subcommands --------------------------------------------------------

struct DecomposeArgs {
  CurveSource src;
  std::string census_csv;
};

int run_decompose(Context& ctx, const DecomposeArgs& a) {
  const auto set = a.src.load(ctx);
  const CellComplex complex(set.family, set.params);
  const auto violations = verify_no_crossing(complex);
  const Census& c = complex.census();
  if (!ctx.common.out.empty()) write_file(ctx.common.out, to_json(complex).dump(1) + "\n");
  if (!a.census_csv.empty())
    write_file(a.census_csv, std::string(kCensusCsvHeader) + "\n" + census_csv_row(complex.params().size(), c) + "\n");
  if (ctx.common.json) {
    Json j;
    j["n"] = complex.params().size();
    j["census"] = to_json(c);
    j["violations"] = violations.size();
    emit(ctx, j.dump());
  } else {
    std::ostringstream os;
    os << "n=" << complex.params().size() << " cells=" << c.total() << " point=" << c.point << " vert_u=" << c.vert_u
       << " vert_e=" << c.vert_e << " arc=" << c.arc << " twodim=" << c.twodim << " violations=" << violations.size();
    emit(ctx, os.str());
  }
  if (!violations.empty()) {
    ctx.err << "crossing violation: cell " << violations.front().cell << " crossed by curve "
            << violations.front().param << '\n';
    return kExitVerification;
  }
  return kExitOk;
}

struct CutArgs {
  CurveSource src;
  std::string r;
  std::size_t max_retries = 100;
  std::string csv;
  bool suboptimal = false;
};

int run_cut(Context& ctx, const CutArgs& a) {
  const Rat r = parse_rat_flag("r", a.r);
  const auto set = a.src.load(ctx);
  SampleConfig cfg;
  cfg.seed = ctx.common.seed;
  cfg.max_retries = a.max_retries;
  const Cutting cut = a.suboptimal ? suboptimal_cutting(set.family, set.params, r, cfg)
                                   : optimal_cutting(set.family, set.params, r, cfg);
  const bool budget_ok = cut.within_budget();
  const bool exact_ok = verify_cutting_exact(cut);
  if (!ctx.common.out.empty()) write_file(ctx.common.out, to_json(cut).dump() + "\n");
  const std::string row = cutting_csv_row(cut);
  if (!a.csv.empty()) write_file(a.csv, std::string(kCuttingCsvHeader) + "\n" + row + "\n");
  if (ctx.common.json) {
    Json j;
    j["n"] = cut.H.size();
    j["r"] = format_rat(cut.r);
    j["pieces"] = cut.pieces.size();
    j["max_crossing"] = cut.max_crossing();
    j["within_budget"] = budget_ok;
    j["verified"] = exact_ok;
    j["trail"] = format_trail(cut.trail);
    emit(ctx, j.dump());
  } else {
    emit(ctx, std::string(kCuttingCsvHeader) + "\n" + row + "\ntrail " + format_trail(cut.trail));
  }
  if (!budget_ok || !exact_ok) {
    ctx.err << "cutting failed verification (budget " << budget_ok << ", exact recount " << exact_ok << ")\n";
    return kExitVerification;
  }
  return kExitOk;
}

struct TailArgs {
  CurveSource src;
  std::string r = "5";
  std::string t = "0,1,2,4";
  std::size_t trials = 500;
};

int run_tailbound(Context& ctx, const TailArgs& a) {
  const Rat r = parse_rat_flag("r", a.r);
  const auto ts = parse_rat_list("t", a.t);
  const auto set = a.src.load(ctx, 50);
  const auto points = tail_estimate(set.family, set.params, r, ts, a.trials, ctx.common.seed);
  std::ostringstream csv;
  csv << "t,mean,stderr\n";
  char buf[64];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", p.mean, p.stderr_);
    csv << format_rat(p.t) << ',' << buf << '\n';
  }
  if (!ctx.common.out.empty()) write_file(ctx.common.out, csv.str());
  if (ctx.common.json) {
    Json j = Json::array();
    for (const auto& p : points) j.push_back({{"t", format_rat(p.t)}, {"mean", p.mean}, {"stderr", p.stderr_}});
    emit(ctx, j.dump());
  } else {
    emit(ctx, csv.str());
  }
  // Levels are nested, so means must not increase with t, and vanish past r.
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (points[i].t < points[k].t && points[k].mean > points[i].mean) {
        ctx.err << "tail means increase between t=" << format_rat(points[i].t) << " and t=" << format_rat(points[k].t)
                << '\n';
        return kExitVerification;
      }
    }
    if (points[i].t > r && points[i].mean != 0) {
      ctx.err << "nonzero tail beyond r at t=" << format_rat(points[i].t) << '\n';
      return kExitVerification;
    }
  }
  return kExitOk;
}

struct MomentArgs {
  std::size_t n = 10;
  std::string p = "1/2";
  unsigned d = 2;
};

int run_moment(Context& ctx, const MomentArgs& a) {
  const Rat p = parse_rat_flag("p", a.p);
  const auto res = moment_check(a.n, p, a.d);
  ctx.digest = fnv1a_hex("moment:" + std::to_string(a.n) + ":" + format_rat(p) + ":" + std::to_string(a.d));
  Json j;
  j["n"] = a.n;
  j["p"] = format_rat(p);
  j["d"] = a.d;
  j["exact"] = format_rat(res.exact);
  j["bound"] = format_rat(res.bound);
  j["holds"] = res.holds;
  if (!ctx.common.out.empty()) write_file(ctx.common.out, j.dump(1) + "\n");
  if (ctx.common.json) {
    emit(ctx, j.dump());
  } else {
    emit(ctx, "E|S|^" + std::to_string(a.d) + " = " + format_rat(res.exact) + " <= " + format_rat(res.bound) + ": " +
                  (res.holds ? "holds" : "VIOLATED"));
  }
  return res.holds ? kExitOk : kExitVerification;
}

struct CorrelateArgs {
  std::size_t m = 0;
  std::string defining;
  std::string p = "1/2";
  std::string ptilde = "1/4";
  bool fuzz = false;
  std::size_t trials = 10000;
  std::size_t q_max = 12;
  std::size_t u_max = 0;
};

Json system_json(const UpSetSystem& sys) {
  Json j;
  j["m"] = sys.m;
  Json d = Json::array();
  for (const auto& s : sys.defining) {
    Json e = Json::array();
    for (std::size_t x : s) e.push_back(x);
    d.push_back(std::move(e));
  }
  j["defining"] = std::move(d);
  return j;
}

int run_correlate(Context& ctx, const CorrelateArgs& a) {
  if (a.fuzz) {
    const std::size_t m_max = a.m == 0 ? 12 : a.m;
    const std::size_t u_max = a.u_max == 0 ? m_max : a.u_max;
    const auto rep = correlation_fuzz(m_max, a.q_max, u_max, a.trials, ctx.common.seed);
    ctx.digest = fnv1a_hex("correlate-fuzz:" + std::to_string(m_max) + ":" + std::to_string(a.q_max) + ":" +
                           std::to_string(u_max) + ":" + std::to_string(a.trials));
    Json j;
    j["m_max"] = m_max;
    j["exhaustive_systems"] = rep.exhaustive_systems;
    j["exhaustive_checks"] = rep.exhaustive_checks;
    j["random_systems"] = rep.random_systems;
    j["random_checks"] = rep.random_checks;
    j["equalities"] = rep.equalities;
    j["violations"] = rep.violations.size();
    if (!rep.violations.empty()) {
      const auto& v = rep.violations.front();
      Json w = system_json(v.sys);
      w["p"] = format_rat(v.p);
      w["ptilde"] = format_rat(v.p_tilde);
      w["ratio"] = format_rat(v.result.ratio);
      w["bound"] = format_rat(v.result.bound);
      j["first_violation"] = std::move(w);
    }
    if (!ctx.common.out.empty()) write_file(ctx.common.out, j.dump(1) + "\n");
    emit(ctx, ctx.common.json ? j.dump()
                              : "exhaustive " + std::to_string(rep.exhaustive_checks) + " checks on " +
                                    std::to_string(rep.exhaustive_systems) + " systems, random " +
                                    std::to_string(rep.random_checks) + " checks, violations " +
                                    std::to_string(rep.violations.size()));
    if (!rep.violations.empty()) {
      ctx.err << "CORRELATION VIOLATION: " << j["first_violation"].dump() << '\n';
      return kExitVerification;
    }
    return kExitOk;
  }
  if (a.m == 0) throw UsageError("--m is required");
  UpSetSystem sys;
  sys.m = a.m;
  try {
    sys.defining = parse_defining(a.defining);
  } catch (const Error& e) {
    throw UsageError(std::string("--defining: ") + e.what());
  }
  if (a.defining.empty()) sys.defining.clear();
  const Rat p = parse_rat_flag("p", a.p);
  const Rat pt = parse_rat_flag("ptilde", a.ptilde);
  const auto res = correlation_check(sys, p, pt);
  ctx.digest = fnv1a_hex("correlate:" + system_json(sys).dump() + ":" + format_rat(p) + ":" + format_rat(pt));
  Json j;
  j["ratio"] = format_rat(res.ratio);
  j["bound"] = format_rat(res.bound);
  j["holds"] = res.holds;
  if (!ctx.common.out.empty()) write_file(ctx.common.out, j.dump(1) + "\n");
  emit(ctx, j.dump());
  if (!res.holds) {
    ctx.err << "CORRELATION VIOLATION: ratio " << format_rat(res.ratio) << " < bound " << format_rat(res.bound) << '\n';
    return kExitVerification;
  }
  return kExitOk;
}

struct IncidenceArgs {
  std::string input;
  std::string grid;
  std::size_t k = 2;
  unsigned d = 2;
  double c = 0;
  std::string csv;
};

int run_incidence(Context& ctx, const IncidenceArgs& a) {
  if (a.input.empty() == a.grid.empty()) throw UsageError("need exactly one of --input FILE or --grid N[,N...]");
  const double c = a.c > 0 ? a.c : calibrate_zarankiewicz();
  struct Row {
    std::string label;
    std::size_t m, n, count;
    double bound;
    KkkResult kkk;
  };
  std::vector<Row> rows;
  std::vector<IncidenceInstance> instances;
  std::vector<std::string> labels;
  if (!a.input.empty()) {
    const std::string text = read_file(a.input);
    ctx.digest = fnv1a_hex(text);
    instances.push_back(deduplicate(incidence_from_json(parse_json(text))));
    labels.push_back(a.input);
  } else {
    ctx.digest = fnv1a_hex("grid:" + a.grid);
    std::stringstream ss(a.grid);
    std::string item;
    while (std::getline(ss, item, ',')) {
      std::size_t N = 0;
      try {
        N = std::stoul(item);
      } catch (const std::exception&) {
        throw UsageError("--grid: not an integer: '" + item + "'");
      }
      instances.push_back(generate_grid_st(N));
      labels.push_back(item);
    }
  }
  bool ok = true;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const auto cnt = count_incidences(inst);
    const std::size_t m = inst.points.size(), n = inst.curves.size();
    Row row{labels[i], m, n, cnt.count, 0, is_kkk_free(m, n, cnt.edges, a.k)};
    row.bound = zarankiewicz_bound(static_cast<double>(std::max<std::size_t>(m, 1)),
                                   static_cast<double>(std::max<std::size_t>(n, 1)), a.d, static_cast<unsigned>(a.k), c);
    // Distinct lines share at most one point, so explicit-free line
    // instances must come out K_{2,2}-free.
    if (!inst.edges && inst.family.kind() == FamilyKind::Lines && a.k >= 2 && !row.kkk.free) ok = false;
    rows.push_back(std::move(row));
  }
  auto ratio = [](const Row& r) { return r.bound > 0 ? static_cast<double>(r.count) / r.bound : 0.0; };
  std::ostringstream csv;
  csv << "instance,m,n,count,bound,ratio,kkk_free\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.6f,%.6f", r.bound, ratio(r));
    csv << r.label << ',' << r.m << ',' << r.n << ',' << r.count << ',' << buf << ',' << (r.kkk.free ? 1 : 0) << '\n';
  }
  if (!a.csv.empty()) write_file(a.csv, csv.str());
  Json all = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["instance"] = r.label;
    j["m"] = r.m;
    j["n"] = r.n;
    j["count"] = r.count;
    j["c"] = c;
    j["bound"] = r.bound;
    j["ratio"] = ratio(r);
    j["kkk_free"] = r.kkk.free;
    if (r.kkk.witness) j["witness"] = {{"points", r.kkk.witness->points}, {"curves", r.kkk.witness->curves}};
    all.push_back(std::move(j));
  }
  const Json doc = rows.size() == 1 ? all[0] : all;
  if (!ctx.common.out.empty()) write_file(ctx.common.out, doc.dump(1) + "\n");
  if (ctx.common.json || rows.size() == 1) {
    emit(ctx, doc.dump());
  } else {
    emit(ctx, csv.str());
  }
  if (!ok) {
    ctx.err << "a point/line instance reported a K_{k,k}\n";
    return kExitVerification;
  }
  return kExitOk;
}

struct ShatterArgs {
  std::string input;
  std::size_t lines = 0;
  std::size_t zmax = 0;
};

int run_shatter(Context& ctx, const ShatterArgs& a) {
  SetSystem sys;
  if (!a.input.empty()) {
    const std::string text = read_file(a.input);
    ctx.digest = fnv1a_hex(text);
    sys = set_system_from_json(parse_json(text));
  } else if (a.lines != 0) {
    const auto pl = dual_line_system(a.lines, a.lines, ctx.common.seed);
    sys = curve_neighbourhoods(CurveFamily(FamilyKind::Lines), pl.points, pl.lines);
    ctx.digest = fnv1a_hex("lines:" + std::to_string(a.lines) + ":" + std::to_string(ctx.common.seed));
  } else {
    throw UsageError("need --input FILE or --lines Z");
  }
  const std::size_t zmax = a.zmax == 0 ? sys.ground : a.zmax;
  const auto prof = shatter_function(sys, zmax);
  std::ostringstream csv;
  csv << "z,pi\n";
  for (std::size_t z = 1; z <= prof.values.size(); ++z) csv << z << ',' << prof.values[z - 1] << '\n';
  if (!ctx.common.out.empty()) write_file(ctx.common.out, csv.str());
  if (ctx.common.json) {
    Json j;
    j["ground"] = prof.ground;
    j["values"] = prof.values;
    j["slope"] = prof.slope;
    j["constant"] = prof.constant;
    emit(ctx, j.dump());
  } else {
    emit(ctx, csv.str());
  }
  for (std::size_t z = 1; z <= prof.values.size(); ++z) {
    const bool capped = z >= 63 || prof.values[z - 1] <= (std::size_t{1} << z);
    if (!capped || (z > 1 && prof.values[z - 1] < prof.values[z - 2])) {
      ctx.err << "shatter profile is not monotone or exceeds 2^z at z=" << z << '\n';
      return kExitVerification;
    }
  }
  return kExitOk;
}

struct RenderArgs {
  CurveSource src;
  std::string viewport = "-10:10:-10:10";
  std::string cut;
  bool shade = false;
};

int run_render(Context& ctx, const RenderArgs& a) {
  RenderOptions opt;
  try {
    opt.viewport = parse_viewport(a.viewport);
  } catch (const Error& e) {
    throw UsageError(std::string("--viewport: ") + e.what());
  }
  opt.shade_cells = a.shade;
  const auto set = a.src.load(ctx);
  std::string svg;
  if (!a.cut.empty()) {
    SampleConfig cfg;
    cfg.seed = ctx.common.seed;
    svg = render_svg(optimal_cutting(set.family, set.params, parse_rat_flag("cut", a.cut), cfg), opt);
  } else {
    svg = render_svg(CellComplex(set.family, set.params), opt);
  }
  if (!ctx.common.out.empty()) {
    write_file(ctx.common.out, svg);
  } else {
    ctx.out << svg;
  }
  return kExitOk;
}

bool is_usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::PreconditionViolated:
    case ErrorKind::ParseError:
    case ErrorKind::NotACube:
    case ErrorKind::GroundSetTooLarge:
    case ErrorKind::EmptyFilter:
    case ErrorKind::VerticalLineUnsupported:
    case ErrorKind::UnsupportedMixedRadicals:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact vertical decompositions, cuttings and incidence experiments", "cutting-forge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  Common common;
  DecomposeArgs dec;
  CutArgs cut;
  TailArgs tail;
  MomentArgs moment;
  CorrelateArgs corr;
  IncidenceArgs inc;
  ShatterArgs sh;
  RenderArgs ren;

  auto* s_dec = app.add_subcommand("decompose", "vertical cell decomposition and census");
  dec.src.add(s_dec);
  s_dec->add_option("--census-csv", dec.census_csv, "census CSV file");

  auto* s_cut = app.add_subcommand("cut", "1/r-cutting with exact verification");
  cut.src.add(s_cut);
  s_cut->add_option("--r", cut.r, "cutting parameter, 1 < r < n")->required();
  s_cut->add_option("--max-retries", cut.max_retries)->capture_default_str();
  s_cut->add_option("--csv", cut.csv, "stats CSV file");
  s_cut->add_flag("--suboptimal", cut.suboptimal, "single-level cutting");

  auto* s_tail = app.add_subcommand("tailbound", "Monte Carlo tail of the excess distribution");
  tail.src.add(s_tail);
  s_tail->add_option("--r", tail.r)->capture_default_str();
  s_tail->add_option("--t", tail.t, "comma-separated thresholds")->capture_default_str();
  s_tail->add_option("--trials", tail.trials)->capture_default_str();

  auto* s_mom = app.add_subcommand("moment", "exact binomial moment against (np+d)^d");
  s_mom->add_option("--n", moment.n)->capture_default_str();
  s_mom->add_option("--p", moment.p)->capture_default_str();
  s_mom->add_option("--d", moment.d)->capture_default_str();

  auto* s_corr = app.add_subcommand("correlate", "exact correlation inequality for up-sets");
  s_corr->add_option("--m", corr.m, "ground set size (m_max with --fuzz)");
  s_corr->add_option("--defining", corr.defining, "defining sets, e.g. \"1,2;3\"");
  s_corr->add_option("--p", corr.p)->capture_default_str();
  s_corr->add_option("--ptilde", corr.ptilde)->capture_default_str();
  s_corr->add_flag("--fuzz", corr.fuzz, "exhaustive and random sweep");
  s_corr->add_option("--trials", corr.trials, "random systems for --fuzz")->capture_default_str();
  s_corr->add_option("--q-max", corr.q_max)->capture_default_str();
  s_corr->add_option("--u-max", corr.u_max, "default: m");

  auto* s_inc = app.add_subcommand("incidence", "incidence count, K_{k,k} test and bound");
  s_inc->add_option("--input", inc.input, "incidence instance JSON");
  s_inc->add_option("--grid", inc.grid, "grid instances N[,N...], N a cube");
  s_inc->add_option("--k", inc.k)->capture_default_str();
  s_inc->add_option("--d", inc.d)->capture_default_str();
  s_inc->add_option("--c", inc.c, "bound constant (default: calibrated on the N=27 grid)");
  s_inc->add_option("--csv", inc.csv, "sweep CSV file");

  auto* s_sh = app.add_subcommand("shatter", "exact shatter function");
  s_sh->add_option("--input", sh.input, "set system JSON");
  s_sh->add_option("--lines", sh.lines, "line neighbourhoods on Z points in general position");
  s_sh->add_option("--zmax", sh.zmax);

  auto* s_ren = app.add_subcommand("render", "SVG of a decomposition or cutting");
  ren.src.add(s_ren);
  s_ren->add_option("--viewport", ren.viewport, "x2min:x2max:x1min:x1max")->capture_default_str();
  s_ren->add_option("--cut", ren.cut, "render a 1/r-cutting with this r");
  s_ren->add_flag("--shade", ren.shade, "shade two-dimensional cells");

  for (auto* s : {s_dec, s_cut, s_tail, s_mom, s_corr, s_inc, s_sh, s_ren}) add_common(s, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  Context ctx{chosen->get_name(), {}, common, {}, out, err};
  ctx.flags.assign(args.begin() + 1, args.end());
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    const std::string& name = ctx.subcommand;
    if (name == "decompose") code = run_decompose(ctx, dec);
    else if (name == "cut") code = run_cut(ctx, cut);
    else if (name == "tailbound") code = run_tailbound(ctx, tail);
    else if (name == "moment") code = run_moment(ctx, moment);
    else if (name == "correlate") code = run_correlate(ctx, corr);
    else if (name == "incidence") code = run_incidence(ctx, inc);
    else if (name == "shatter") code = run_shatter(ctx, sh);
    else code = run_render(ctx, ren);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n\n" << chosen->help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (is_usage_kind(e.kind())) {
      err << '\n' << chosen->help();
      return kExitUsage;
    }
    return kExitVerification;
  }
  write_manifest(ctx, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return code;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, out, err);
}

}  // namespace cutting_forge
