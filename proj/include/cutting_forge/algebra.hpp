#pragma once

// Exact arithmetic substrate: rationals, numbers a + b*sqrt(d) over the
// rationals, and the two-point extension by -inf/+inf.
//
// Ordering is always decided exactly. A floating-point filter answers the
// easy comparisons; anything it cannot certify falls through to rational
// arithmetic.

#include <compare>
#include <memory>
#include <type_traits>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cutting_forge/error.hpp"

namespace cutting_forge {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "-0.125" into a canonical
/// rational. Throws ErrorKind::ParseError on malformed input.
Rat parse_rat(const std::string& text);

/// Always "p/q", with q = 1 for integers.
std::string format_rat(const Rat& value);

Int floor_rat(const Rat& value);
Int ceil_rat(const Rat& value);

/// Exact number a + b*sqrt(d). Invariants after construction: d = 0 iff
/// b = 0; otherwise d > 1 is not a perfect square and carries no square
/// factor p^2 for primes p below the trial-division bound.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rat& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QuadExt(Rat&& a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadExt(long a) : a_(a) {}        // NOLINT(google-explicit-constructor)
  QuadExt(Rat a, Rat b, Int d);

  const Rat& a() const { return a_; }
  const Rat& b() const;
  const Int& d() const;

  bool is_rational() const { return !irr_; }
  int sign() const;
  double approx() const;

  QuadExt operator-() const;
  friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
  friend QuadExt operator*(const QuadExt& x, const Rat& r);
  friend QuadExt operator/(const QuadExt& x, const Rat& r);

  friend bool operator==(const QuadExt& x, const QuadExt& y);
  friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

  /// a + b*sqrt(d) where d is already known to be normalized; b may be 0.
  static QuadExt normalized(Rat a, Rat b, const QuadExt& radicand_source);

 private:
  // The irrational part is shared between copies: most values are rational,
  // and copying those then costs a single rational.
  struct Irr {
    Rat b;
    Int d;
  };
  Rat a_;
  std::shared_ptr<const Irr> irr_;
};

enum class Ordering { LT, EQ, GT };

/// Exact comparison. Numbers with unrelated radicands are compared by
/// isolating one radical and squaring twice.
Ordering qe_cmp(const QuadExt& x, const QuadExt& y);

/// Value in the extended line: -inf < every finite value < +inf.
class Ext {
 public:
  enum class Tag : std::uint8_t { NegInf, Finite, PosInf };

  Ext() = default;
  Ext(const QuadExt& v) : tag_(Tag::Finite), value_(v) {}  // NOLINT
  Ext(const Rat& v) : tag_(Tag::Finite), value_(v) {}      // NOLINT

  static Ext neg_inf() { return Ext(Tag::NegInf); }
  static Ext pos_inf() { return Ext(Tag::PosInf); }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  bool is_neg_inf() const { return tag_ == Tag::NegInf; }
  bool is_pos_inf() const { return tag_ == Tag::PosInf; }

  /// Throws ErrorKind::InfiniteArithmetic for the infinities.
  const QuadExt& value() const;

  friend bool operator==(const Ext& x, const Ext& y);
  friend std::strong_ordering operator<=>(const Ext& x, const Ext& y);

 private:
  explicit Ext(Tag tag) : tag_(tag) {}
  Tag tag_ = Tag::Finite;
  QuadExt value_;
};

/// Real roots of a*t^2 + b*t + c = 0 in ascending order. A repeated root is
/// listed once. all_reals is set for the zero polynomial.
struct QuadraticRoots {
  bool all_reals = false;
  std::vector<QuadExt> roots;
};

QuadraticRoots solve_quadratic(const Rat& a, const Rat& b, const Rat& c);

/// A rational strictly between lo and hi (requires lo < hi). Prefers the
/// rational with the smallest denominator found by continued fractions.
Rat rational_between(const Ext& lo, const Ext& hi);

/// Rational enclosure [lower, upper] of x with width at most 2^-bits.
std::pair<Rat, Rat> enclose(const QuadExt& x, unsigned bits);

/// Polynomial c0 + c1*t + c2*t^2 with rational coefficients. Curves of the
/// concrete families are graphs x1 = p(x2) of these.
struct QuadPoly {
  Rat c0;
  Rat c1;
  Rat c2;

  template <class Scalar>
  Scalar operator()(const Scalar& t) const {
    if constexpr (std::is_same_v<Scalar, QuadExt>) {
      return eval(t);
    } else if constexpr (std::is_same_v<Scalar, Rat>) {
      if (sgn(c2) == 0) return Rat(c1 * t + c0);
      return Rat((c2 * t + c1) * t + c0);
    } else {
      return (Scalar(c2) * t + Scalar(c1)) * t + Scalar(c0);
    }
  }
  QuadExt eval(const QuadExt& t) const;

  int degree() const;
  bool is_zero() const { return degree() < 0; }
  QuadraticRoots roots() const { return solve_quadratic(c2, c1, c0); }

  friend QuadPoly operator-(const QuadPoly& p, const QuadPoly& q) {
    return {p.c0 - q.c0, p.c1 - q.c1, p.c2 - q.c2};
  }
  friend bool operator==(const QuadPoly& p, const QuadPoly& q) {
    return p.c0 == q.c0 && p.c1 == q.c1 && p.c2 == q.c2;
  }
};

/// Lexicographic on (c2, c1, c0); gives parameter sets a canonical order.
bool canonical_less(const QuadPoly& p, const QuadPoly& q);

}  // namespace cutting_forge
