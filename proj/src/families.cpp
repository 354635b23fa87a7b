#include "cutting_forge/families.hpp"

#include <algorithm>

#include "cutting_forge/cell.hpp"

namespace cutting_forge {

std::string_view to_string(FamilyKind kind) {
  return kind == FamilyKind::Lines ? "lines" : "parabolas";
}

FamilyKind parse_family(std::string_view name) {
  if (name == "lines") return FamilyKind::Lines;
  if (name == "parabolas") return FamilyKind::Parabolas;
  throw Error(ErrorKind::ParseError, "unknown family '" + std::string(name) + "'");
}

void CurveFamily::check(const CurveParam& s) const {
  if (s.coeffs.size() != arity()) {
    throw Error(ErrorKind::PreconditionViolated, std::string(to_string(kind_)) + " expects " +
                                                     std::to_string(arity()) + " coefficients, got " +
                                                     std::to_string(s.coeffs.size()));
  }
}

QuadPoly CurveFamily::branch(std::size_t j, const CurveParam& s) const {
  if (j < 1 || j > branch_count()) throw Error(ErrorKind::PreconditionViolated, "branch index out of range");
  check(s);
  if (kind_ == FamilyKind::Lines) return {s.coeffs[1], s.coeffs[0], Rat(0)};
  return {s.coeffs[2], s.coeffs[1], s.coeffs[0]};
}

QuadExt CurveFamily::eval_branch(std::size_t j, const QuadExt& t, const CurveParam& s) const {
  return branch(j, s)(t);
}

ProperIntersections CurveFamily::proper_intersections(const CurveParam& s1, const CurveParam& s2) const {
  ProperIntersections out;
  const QuadPoly g1 = branch(1, s1);
  const QuadPoly g2 = branch(1, s2);
  const QuadraticRoots roots = (g1 - g2).roots();
  if (roots.all_reals) {
    out.coincident = true;
    return out;
  }
  for (const QuadExt& x : roots.roots) out.points.push_back({g1(x), x});
  return out;
}

bool CurveFamily::crosses_cell(const CurveParam& s, const Cell& cell) const {
  return crosses(branch(1, s), cell.region());
}

std::vector<CurveParam> CurveFamily::normalize(std::vector<CurveParam> params) const {
  for (const CurveParam& s : params) check(s);
  auto less = [this](const CurveParam& a, const CurveParam& b) {
    return canonical_less(branch(1, a), branch(1, b));
  };
  std::sort(params.begin(), params.end(), less);
  params.erase(std::unique(params.begin(), params.end()), params.end());
  return params;
}

CurveParam line_from_implicit(const Rat& p, const Rat& q, const Rat& c) {
  if (sgn(p) == 0) throw Error(ErrorKind::VerticalLineUnsupported, "line has no x1 term");
  return CurveParam{{Rat(-q / p), Rat(c / p)}};
}

}  // namespace cutting_forge
