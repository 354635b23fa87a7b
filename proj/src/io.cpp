#include "cutting_forge/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "cutting_forge/error.hpp"

namespace cutting_forge {

namespace {

Json index_or_null(const std::optional<CurveRef>& ref) {
  if (!ref) return nullptr;
  return ref->index;
}

std::string_view wall_name(LeftWall w) {
  switch (w) {
    case LeftWall::None: return "none";
    case LeftWall::BreakLine: return "break_line";
    case LeftWall::BottomIntersection: return "bottom_intersection";
    case LeftWall::ExtraWall: return "extra_wall";
  }
  return "none";
}

Json index_list(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (std::size_t i : v) out.push_back(i);
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_from_json(const Json& j) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw Error(ErrorKind::ParseError, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::vector<std::size_t> size_list(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "expected an array of integers");
  std::vector<std::size_t> out;
  for (const auto& e : j) out.push_back(size_from_json(e));
  return out;
}

}  // namespace

Json to_json(const Rat& x) { return format_rat(x); }

Json to_json(const QuadExt& x) {
  Json out;
  out["a"] = format_rat(x.a());
  out["b"] = format_rat(x.b());
  out["d"] = x.d().fits_slong_p() ? Json(x.d().get_si()) : Json(x.d().get_str());
  return out;
}

Json to_json(const Ext& x) {
  if (x.is_neg_inf()) return "-inf";
  if (x.is_pos_inf()) return "+inf";
  return to_json(x.value());
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(Int(std::to_string(j.get<long long>())));
  throw Error(ErrorKind::ParseError, "expected a rational as \"p/q\" or an integer, got " + j.dump());
}

QuadExt quadext_from_json(const Json& j) {
  if (j.is_string() || j.is_number_integer()) return QuadExt(rat_from_json(j));
  const Rat a = rat_from_json(field(j, "a"));
  const Rat b = j.contains("b") ? rat_from_json(j.at("b")) : Rat(0);
  Int d(0);
  if (j.contains("d")) {
    const auto& dj = j.at("d");
    if (dj.is_number_integer()) {
      d = Int(std::to_string(dj.get<long long>()));
    } else if (dj.is_string()) {
      if (d.set_str(dj.get<std::string>(), 10) != 0) throw Error(ErrorKind::ParseError, "bad radicand " + dj.dump());
    } else {
      throw Error(ErrorKind::ParseError, "bad radicand " + dj.dump());
    }
  }
  if (sgn(b) == 0 || sgn(d) == 0) return QuadExt(a);
  return QuadExt(a, b, d);
}

Ext ext_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return Ext::neg_inf();
    if (s == "+inf" || s == "inf") return Ext::pos_inf();
  }
  return Ext(quadext_from_json(j));
}

Json to_json(const CurveFamily& family, const std::vector<CurveParam>& params) {
  Json out;
  out["family"] = std::string(to_string(family.kind()));
  Json ps = Json::array();
  for (const auto& s : params) {
    Json c = Json::array();
    for (const auto& x : s.coeffs) c.push_back(format_rat(x));
    ps.push_back(std::move(c));
  }
  out["params"] = std::move(ps);
  return out;
}

CurveSet curves_from_json(const Json& j) {
  CurveSet out;
  out.family = CurveFamily(parse_family(field(j, "family").get<std::string>()));
  const auto& ps = field(j, "params");
  if (!ps.is_array()) throw Error(ErrorKind::ParseError, "'params' must be an array");
  for (const auto& p : ps) {
    if (!p.is_array()) throw Error(ErrorKind::ParseError, "each parameter tuple must be an array");
    CurveParam s;
    for (const auto& c : p) s.coeffs.push_back(rat_from_json(c));
    out.family.check(s);
    out.params.push_back(std::move(s));
  }
  return out;
}

Json to_json(const Cell& cell) {
  Json out;
  out["kind"] = std::string(to_string(cell.kind()));
  std::visit(
      [&](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, PointCell>) {
          out["x1"] = to_json(c.p.x1);
          out["x2"] = to_json(c.p.x2);
          out["curves"] = index_list(c.curves);
        } else if constexpr (std::is_same_v<T, VerticalCell>) {
          out["at"] = to_json(c.at);
          out["lower"] = to_json(c.lower);
          out["upper"] = to_json(c.upper);
          out["lower_curve"] = index_or_null(c.lower_curve);
          out["upper_curve"] = index_or_null(c.upper_curve);
          out["direction"] = c.direction == Direction::Up ? "up" : "down";
        } else if constexpr (std::is_same_v<T, ArcCell>) {
          out["carrier"] = c.carrier.index;
          out["left"] = to_json(c.left);
          out["right"] = to_json(c.right);
        } else {
          out["bottom"] = index_or_null(c.bottom);
          out["top"] = index_or_null(c.top);
          out["left"] = to_json(c.left);
          out["right"] = to_json(c.right);
          out["wall"] = std::string(wall_name(c.wall));
        }
      },
      cell.shape);
  out["defining"] = index_list(cell.defining);
  return out;
}

Json to_json(const Census& c) {
  Json out;
  out["point"] = c.point;
  out["vert_u"] = c.vert_u;
  out["vert_e"] = c.vert_e;
  out["arc"] = c.arc;
  out["twodim"] = c.twodim;
  out["total"] = c.total();
  out["f1"] = c.f1;
  out["f2"] = c.f2;
  out["f3"] = c.f3;
  out["f4"] = c.f4;
  return out;
}

Json to_json(const CellComplex& complex) {
  Json out = to_json(complex.family(), complex.params());
  out["n"] = complex.params().size();
  out["census"] = to_json(complex.census());
  Json cells = Json::array();
  for (const auto& c : complex.cells()) cells.push_back(to_json(c));
  out["cells"] = std::move(cells);
  return out;
}

std::string census_csv_row(std::size_t n, const Census& c) {
  std::ostringstream os;
  os << n << ',' << c.point << ',' << c.vert_u << ',' << c.vert_e << ',' << c.arc << ',' << c.twodim << ','
     << c.total();
  return os.str();
}

Json to_json(const Cutting& cutting) {
  Json out = to_json(cutting.family, cutting.H);
  const std::size_t n = cutting.H.size();
  out["n"] = n;
  out["r"] = format_rat(cutting.r);
  out["budget"] = floor_rat(Rat(Rat(static_cast<long>(n)) / cutting.r)).get_str();
  out["max_crossing"] = cutting.max_crossing();
  out["within_budget"] = cutting.within_budget();
  out["level1_cells"] = cutting.complex ? cutting.complex->size() : 0;
  Json refinements = Json::array();
  for (const auto& ref : cutting.refinements) {
    Json r;
    r["outer"] = ref.outer;
    r["t"] = format_rat(ref.t);
    r["subset"] = index_list(ref.subset);
    r["cells"] = ref.complex ? ref.complex->size() : 0;
    refinements.push_back(std::move(r));
  }
  out["refinements"] = std::move(refinements);
  Json pieces = Json::array();
  for (const auto& p : cutting.pieces) {
    Json pj;
    pj["outer"] = p.outer;
    pj["refinement"] = p.refinement ? Json(*p.refinement) : Json(nullptr);
    pj["inner"] = p.inner;
    pj["crossing"] = index_list(p.crossing);
    pieces.push_back(std::move(pj));
  }
  out["pieces"] = std::move(pieces);
  Json trail = Json::array();
  for (const auto& t : cutting.trail) {
    Json tj;
    tj["stage"] = t.stage;
    tj["seed"] = t.seed;
    tj["attempt"] = t.attempt;
    tj["sample_size"] = t.sample_size;
    tj["cells"] = t.cells;
    tj["accepted"] = t.accepted;
    trail.push_back(std::move(tj));
  }
  out["trail"] = std::move(trail);
  return out;
}

std::string cutting_csv_row(const Cutting& c) {
  std::ostringstream os;
  const std::size_t n = c.H.size();
  os << n << ',' << format_rat(c.r) << ',' << floor_rat(Rat(Rat(static_cast<long>(n)) / c.r)).get_str() << ','
     << c.pieces.size() << ',' << c.max_crossing() << ',' << c.refinements.size() << ','
     << (c.complex ? c.complex->size() : 0);
  return os.str();
}

IncidenceInstance incidence_from_json(const Json& j) {
  IncidenceInstance inst;
  inst.family = CurveFamily(j.contains("family") ? parse_family(j.at("family").get<std::string>()) : FamilyKind::Lines);
  for (const auto& p : field(j, "points")) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::ParseError, "points are [x1, x2] pairs");
    inst.points.push_back({rat_from_json(p[0]), rat_from_json(p[1])});
  }
  Json curves;
  curves["family"] = std::string(to_string(inst.family.kind()));
  curves["params"] = j.contains("params") ? j.at("params") : Json::array();
  inst.curves = curves_from_json(curves).params;
  if (j.contains("edges")) {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::ParseError, "edges are [point, curve] pairs");
      const Edge edge{size_from_json(e[0]), size_from_json(e[1])};
      if (edge.point >= inst.points.size() || edge.curve >= inst.curves.size())
        throw Error(ErrorKind::ParseError, "edge [" + std::to_string(edge.point) + ", " + std::to_string(edge.curve) +
                                               "] is out of range");
      edges.push_back(edge);
    }
    inst.edges = std::move(edges);
  }
  return inst;
}

Json to_json(const IncidenceInstance& inst) {
  Json out = to_json(inst.family, inst.curves);
  Json points = Json::array();
  for (const auto& p : inst.points) points.push_back(Json::array({format_rat(p.x1), format_rat(p.x2)}));
  out["points"] = std::move(points);
  if (inst.edges) {
    Json edges = Json::array();
    for (const auto& e : *inst.edges) edges.push_back(Json::array({e.point, e.curve}));
    out["edges"] = std::move(edges);
  }
  return out;
}

SetSystem set_system_from_json(const Json& j) {
  SetSystem sys;
  sys.ground = size_from_json(field(j, "ground"));
  for (const auto& s : field(j, "sets")) {
    sys.sets.push_back(size_list(s));
    for (std::size_t e : sys.sets.back())
      if (e == 0 || e > sys.ground)
        throw Error(ErrorKind::ParseError, "set element " + std::to_string(e) + " outside 1.." + std::to_string(sys.ground));
  }
  return sys;
}

Json to_json(const SetSystem& sys) {
  Json out;
  out["ground"] = sys.ground;
  Json sets = Json::array();
  for (const auto& s : sys.sets) sets.push_back(index_list(s));
  out["sets"] = std::move(sets);
  return out;
}

std::vector<std::vector<std::size_t>> parse_defining(std::string_view text) {
  std::vector<std::vector<std::size_t>> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    const std::string_view seg = text.substr(start, semi == std::string_view::npos ? text.size() - start : semi - start);
    std::vector<std::size_t> set;
    std::size_t pos = 0;
    while (pos < seg.size()) {
      const std::size_t comma = seg.find(',', pos);
      std::string_view item = seg.substr(pos, comma == std::string_view::npos ? seg.size() - pos : comma - pos);
      while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
      while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
      std::size_t value = 0;
      const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
      if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
        throw Error(ErrorKind::ParseError, "bad element '" + std::string(item) + "' in defining sets");
      set.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    out.push_back(std::move(set));
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::PreconditionViolated, "cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::PreconditionViolated, "write failed for " + path);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace cutting_forge
