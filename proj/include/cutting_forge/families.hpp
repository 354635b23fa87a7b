#pragma once

// Curve families in branch normal form: k sorted branch functions
// x1 = h_j(x2; s) and l breakpoint abscissae u_i(s). The shipped families
// (lines and parabolas) have a single polynomial branch and no breakpoints.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cutting_forge/algebra.hpp"
#include "cutting_forge/region.hpp"

namespace cutting_forge {

struct Cell;

enum class FamilyKind { Lines, Parabolas };

std::string_view to_string(FamilyKind kind);
FamilyKind parse_family(std::string_view name);

/// Parameter tuple s of one curve. Lines: (a, b) for x1 = a*x2 + b.
/// Parabolas: (a, b, c) for x1 = a*x2^2 + b*x2 + c.
struct CurveParam {
  std::vector<Rat> coeffs;

  friend bool operator==(const CurveParam&, const CurveParam&) = default;
};

struct PointQE {
  QuadExt x1;
  QuadExt x2;

  friend bool operator==(const PointQE& p, const PointQE& q) { return p.x1 == q.x1 && p.x2 == q.x2; }
};

struct ProperIntersections {
  bool coincident = false;
  std::vector<PointQE> points;  ///< ascending in x2
};

class CurveFamily {
 public:
  explicit CurveFamily(FamilyKind kind) : kind_(kind) {}

  FamilyKind kind() const { return kind_; }
  std::size_t branch_count() const { return 1; }
  std::size_t breakpoint_count() const { return 0; }
  /// Upper bound N_l on proper intersections of two distinct branches.
  std::size_t max_proper_intersections() const { return kind_ == FamilyKind::Lines ? 1 : 2; }
  std::size_t arity() const { return kind_ == FamilyKind::Lines ? 2 : 3; }

  /// Validates the parameter tuple; throws PreconditionViolated on arity
  /// mismatch.
  void check(const CurveParam& s) const;

  /// Branch j (1-based) as a polynomial in x2.
  QuadPoly branch(std::size_t j, const CurveParam& s) const;

  QuadExt eval_branch(std::size_t j, const QuadExt& t, const CurveParam& s) const;

  ProperIntersections proper_intersections(const CurveParam& s1, const CurveParam& s2) const;

  /// Some set of the six sign conditions of s crosses the cell.
  bool crosses_cell(const CurveParam& s, const Cell& cell) const;

  /// Removes duplicate parameters and sorts them canonically.
  std::vector<CurveParam> normalize(std::vector<CurveParam> params) const;

  friend bool operator==(const CurveFamily&, const CurveFamily&) = default;

 private:
  FamilyKind kind_;
};

/// The line p*x1 + q*x2 = c rewritten as x1 = a*x2 + b. Vertical lines
/// (p = 0) are rejected with VerticalLineUnsupported.
CurveParam line_from_implicit(const Rat& p, const Rat& q, const Rat& c);

}  // namespace cutting_forge
