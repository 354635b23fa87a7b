#pragma once

// JSON and CSV forms of the library's objects. Rationals are strings "p/q",
// QuadExt is {"a","b","d"} and Ext adds the strings "-inf" and "+inf". Keys
// keep insertion order so equal inputs give byte-identical documents.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cutting_forge/correlation.hpp"
#include "cutting_forge/cutting.hpp"
#include "cutting_forge/decomposition.hpp"
#include "cutting_forge/incidence.hpp"

namespace cutting_forge {

using Json = nlohmann::ordered_json;

Json to_json(const Rat& x);
Json to_json(const QuadExt& x);
Json to_json(const Ext& x);

/// Accepts "p/q" strings, decimal strings and JSON integers.
Rat rat_from_json(const Json& j);
QuadExt quadext_from_json(const Json& j);
Ext ext_from_json(const Json& j);

struct CurveSet {
  CurveFamily family{FamilyKind::Lines};
  std::vector<CurveParam> params;
};

Json to_json(const CurveFamily& family, const std::vector<CurveParam>& params);
/// {"family": "lines" | "parabolas", "params": [[...], ...]}.
CurveSet curves_from_json(const Json& j);

Json to_json(const Cell& cell);
Json to_json(const Census& census);
Json to_json(const CellComplex& complex);

inline constexpr std::string_view kCensusCsvHeader = "n,point,vert_u,vert_e,arc,twodim,total";
std::string census_csv_row(std::size_t n, const Census& census);

Json to_json(const Cutting& cutting);
inline constexpr std::string_view kCuttingCsvHeader = "n,r,budget,pieces,max_crossing,refinements,level1_cells";
std::string cutting_csv_row(const Cutting& cutting);

/// {"family", "points": [[x1, x2], ...], "params": [...], "edges"?: [[i, j], ...]}.
IncidenceInstance incidence_from_json(const Json& j);
Json to_json(const IncidenceInstance& inst);

/// {"ground": z, "sets": [[1, 2], [3], ...]}, elements 1-based.
SetSystem set_system_from_json(const Json& j);
Json to_json(const SetSystem& sys);

/// Parses "1,2;3" into {{1, 2}, {3}}; an empty segment is the empty set.
std::vector<std::vector<std::size_t>> parse_defining(std::string_view text);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Whole file; throws ParseError when it cannot be read.
std::string read_file(const std::string& path);
/// Throws PreconditionViolated when it cannot be written.
void write_file(const std::string& path, std::string_view contents);

Json parse_json(std::string_view text);

}  // namespace cutting_forge
