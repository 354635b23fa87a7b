#include "cutting_forge/algebra.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace cutting_forge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedMixedRadicals: return "UnsupportedMixedRadicals";
    case ErrorKind::InfiniteArithmetic: return "InfiniteArithmetic";
    case ErrorKind::VerticalLineUnsupported: return "VerticalLineUnsupported";
    case ErrorKind::CoverageGap: return "CoverageGap";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::RetryBudgetExhausted: return "RetryBudgetExhausted";
    case ErrorKind::GroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorKind::EmptyFilter: return "EmptyFilter";
    case ErrorKind::CombinatorialBudgetExceeded: return "CombinatorialBudgetExceeded";
    case ErrorKind::NotACube: return "NotACube";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

int sgn_rat(const Rat& r) { return sgn(r); }

// sign of a + b*sqrt(d), d > 0.
int sign_ab(const Rat& a, const Rat& b, const Int& d) {
  const int sa = sgn_rat(a);
  const int sb = sgn_rat(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: compare a^2 with b^2 d.
  const Rat lhs = a * a;
  const Rat rhs = b * b * Rat(d);
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  // |a| dominates iff lhs > rhs.
  return c > 0 ? sa : sb;
}

bool perfect_square(const Int& v, Int* root) {
  if (sgn(v) < 0) return false;
  if (mpz_perfect_square_p(v.get_mpz_t()) == 0) return false;
  if (root != nullptr) mpz_sqrt(root->get_mpz_t(), v.get_mpz_t());
  return true;
}

// Rewrites x over radicand `target` when sqrt(x.d)/sqrt(target) is rational.
std::optional<Rat> coefficient_over(const QuadExt& x, const Int& target) {
  if (x.is_rational()) return Rat(0);
  if (x.d() == target) return x.b();
  Int root;
  if (!perfect_square(Int(x.d() * target), &root)) return std::nullopt;
  // sqrt(d) = sqrt(d * target) / sqrt(target) = (root / target) * sqrt(target)
  Rat scale(root, target);
  scale.canonicalize();
  return Rat(x.b() * scale);
}

struct Aligned {
  Rat a1, b1, a2, b2;
  Int d;
};

std::optional<Aligned> align(const QuadExt& x, const QuadExt& y) {
  if (x.is_rational() && y.is_rational()) return Aligned{x.a(), 0, y.a(), 0, 0};
  const Int& d = x.is_rational() ? y.d() : x.d();
  auto bx = coefficient_over(x, d);
  auto by = coefficient_over(y, d);
  if (!bx || !by) return std::nullopt;
  return Aligned{x.a(), *bx, y.a(), *by, d};
}

Aligned align_or_throw(const QuadExt& x, const QuadExt& y) {
  auto al = align(x, y);
  if (!al) {
    throw Error(ErrorKind::UnsupportedMixedRadicals,
                "arithmetic between sqrt(" + x.d().get_str() + ") and sqrt(" + y.d().get_str() + ")");
  }
  return *al;
}

Rat simplest_open(const Rat& x, const std::optional<Rat>& y) {
  const Int n = floor_rat(x);
  const Rat next(n + 1);
  if (!y || next < *y) return next;
  const Rat lo = 1 / Rat(*y - Rat(n));
  std::optional<Rat> hi;
  if (x != Rat(n)) hi = Rat(1 / Rat(x - Rat(n)));
  return Rat(Rat(n) + 1 / simplest_open(lo, hi));
}

Rat simplest_between(const Rat& x, const Rat& y) {
  if (sgn(x) < 0 && sgn(y) > 0) return Rat(0);
  if (sgn(y) <= 0) return Rat(-simplest_open(Rat(-y), Rat(-x)));
  return simplest_open(x, y);
}

}  // namespace

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw Error(ErrorKind::ParseError, "empty rational");
  const auto dot = text.find('.');
  Rat out;
  if (dot == std::string::npos) {
    if (out.set_str(text, 10) != 0) throw Error(ErrorKind::ParseError, "bad rational '" + text + "'");
    if (sgn(out.get_den()) == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + text + "'");
    out.canonicalize();
    return out;
  }
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const std::size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+") throw Error(ErrorKind::ParseError, "bad decimal '" + text + "'");
  if (digits[0] == '+') digits.erase(0, 1);
  Int num;
  if (num.set_str(digits, 10) != 0) throw Error(ErrorKind::ParseError, "bad decimal '" + text + "'");
  Int den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
  out = Rat(num, den);
  out.canonicalize();
  return out;
}

std::string format_rat(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Int floor_rat(const Rat& value) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& value) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return q;
}

QuadExt::QuadExt(Rat a, Rat b, Int d) : a_(std::move(a)) {
  if (sgn(d) < 0) throw Error(ErrorKind::PreconditionViolated, "negative radicand");
  if (sgn(b) == 0 || sgn(d) == 0) return;
  for (unsigned p : kSmallPrimes) {
    const unsigned long p2 = static_cast<unsigned long>(p) * p;
    if (cmp(d, p2) < 0) break;
    while (mpz_divisible_ui_p(d.get_mpz_t(), p2) != 0) {
      mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), p2);
      b *= p;
    }
  }
  Int root;
  if (perfect_square(d, &root)) {
    a_ += b * Rat(root);
    return;
  }
  irr_ = std::make_shared<const Irr>(Irr{std::move(b), std::move(d)});
}

QuadExt QuadExt::normalized(Rat a, Rat b, const QuadExt& radicand_source) {
  QuadExt out(std::move(a));
  if (sgn(b) == 0 || radicand_source.is_rational()) return out;
  out.irr_ = std::make_shared<const Irr>(Irr{std::move(b), radicand_source.d()});
  return out;
}

const Rat& QuadExt::b() const {
  static const Rat zero(0);
  return irr_ ? irr_->b : zero;
}

const Int& QuadExt::d() const {
  static const Int zero(0);
  return irr_ ? irr_->d : zero;
}

int QuadExt::sign() const {
  if (is_rational()) return sgn(a_);
  return sign_ab(a_, irr_->b, irr_->d);
}

double QuadExt::approx() const {
  if (is_rational()) return a_.get_d();
  return a_.get_d() + irr_->b.get_d() * std::sqrt(irr_->d.get_d());
}

QuadExt QuadExt::operator-() const {
  if (is_rational()) return QuadExt(Rat(-a_));
  return normalized(Rat(-a_), Rat(-irr_->b), *this);
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  if (y.is_rational()) {
    QuadExt out = x;
    out.a_ += y.a_;
    return out;
  }
  if (x.is_rational()) return y + x;
  if (x.irr_->d == y.irr_->d) return QuadExt::normalized(x.a_ + y.a_, x.irr_->b + y.irr_->b, x);
  Aligned al = align_or_throw(x, y);
  return {al.a1 + al.a2, al.b1 + al.b2, al.d};
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) { return x + (-y); }

QuadExt operator*(const QuadExt& x, const Rat& r) {
  if (x.is_rational()) return QuadExt(Rat(x.a_ * r));
  return QuadExt::normalized(x.a_ * r, x.irr_->b * r, x);
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  if (y.is_rational()) return x * y.a_;
  if (x.is_rational()) return y * x.a_;
  Aligned al = align_or_throw(x, y);
  return {al.a1 * al.a2 + al.b1 * al.b2 * Rat(al.d), al.a1 * al.b2 + al.a2 * al.b1, al.d};
}

QuadExt operator/(const QuadExt& x, const Rat& r) {
  if (sgn(r) == 0) throw Error(ErrorKind::PreconditionViolated, "division by zero");
  if (x.is_rational()) return QuadExt(Rat(x.a_ / r));
  return QuadExt::normalized(x.a_ / r, x.irr_->b / r, x);
}

QuadExt QuadPoly::eval(const QuadExt& t) const {
  if (t.is_rational()) return QuadExt((*this)(t.a()));
  // c0 + c1 (a + b s) + c2 (a + b s)^2 with s = sqrt(d)
  const Rat& a = t.a();
  const Rat& b = t.b();
  Rat rational = (c2 * a + c1) * a + c0 + c2 * b * b * Rat(t.d());
  Rat radical = b * (c1 + 2 * c2 * a);
  return QuadExt::normalized(std::move(rational), std::move(radical), t);
}

Ordering qe_cmp(const QuadExt& x, const QuadExt& y) {
  if (x.is_rational() && y.is_rational()) {
    const int c = cmp(x.a(), y.a());
    return c < 0 ? Ordering::LT : (c > 0 ? Ordering::GT : Ordering::EQ);
  }
  // Floating-point filter; each approximation carries a relative error of a
  // few ulps of its magnitude |a| + |b sqrt(d)|.
  {
    const double xa = x.approx();
    const double ya = y.approx();
    const double mag = std::fabs(x.a().get_d()) + std::fabs(x.b().get_d()) * std::sqrt(x.d().get_d()) +
                       std::fabs(y.a().get_d()) + std::fabs(y.b().get_d()) * std::sqrt(y.d().get_d());
    if (std::isfinite(mag) && mag > 1e-280) {
      const double diff = xa - ya;
      if (std::fabs(diff) > mag * 1e-13) return diff < 0 ? Ordering::LT : Ordering::GT;
    }
  }
  int s = 0;
  if (auto al = align(x, y)) {
    s = sign_ab(al->a1 - al->a2, al->b1 - al->b2, al->d);
  } else {
    // (A + b1 sqrt(d1)) - b2 sqrt(d2) with sqrt(d1), sqrt(d2) independent.
    const Rat big_a = x.a() - y.a();
    const int sx = sign_ab(big_a, x.b(), x.d());
    const int sy = sgn(y.b());
    if (sy < 0 && sx >= 0) {
      s = 1;
    } else if (sy > 0 && sx <= 0) {
      s = -1;
    } else {
      const Rat rational = big_a * big_a + x.b() * x.b() * Rat(x.d()) - y.b() * y.b() * Rat(y.d());
      const Rat radical = 2 * big_a * x.b();
      s = sx * sign_ab(rational, radical, x.d());
    }
  }
  return s < 0 ? Ordering::LT : (s > 0 ? Ordering::GT : Ordering::EQ);
}

bool operator==(const QuadExt& x, const QuadExt& y) { return qe_cmp(x, y) == Ordering::EQ; }

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
  switch (qe_cmp(x, y)) {
    case Ordering::LT: return std::strong_ordering::less;
    case Ordering::GT: return std::strong_ordering::greater;
    case Ordering::EQ: break;
  }
  return std::strong_ordering::equal;
}

const QuadExt& Ext::value() const {
  if (tag_ != Tag::Finite) throw Error(ErrorKind::InfiniteArithmetic, "value of an infinite extended number");
  return value_;
}

bool operator==(const Ext& x, const Ext& y) {
  if (x.tag_ != y.tag_) return false;
  return x.tag_ != Ext::Tag::Finite || x.value_ == y.value_;
}

std::strong_ordering operator<=>(const Ext& x, const Ext& y) {
  if (x.tag_ != y.tag_) return static_cast<int>(x.tag_) <=> static_cast<int>(y.tag_);
  if (x.tag_ != Ext::Tag::Finite) return std::strong_ordering::equal;
  return x.value_ <=> y.value_;
}

QuadraticRoots solve_quadratic(const Rat& a, const Rat& b, const Rat& c) {
  QuadraticRoots out;
  if (sgn(a) == 0) {
    if (sgn(b) == 0) {
      out.all_reals = sgn(c) == 0;
      return out;
    }
    out.roots.emplace_back(Rat(-c / b));
    return out;
  }
  const Rat disc = b * b - 4 * a * c;
  const int sd = sgn(disc);
  if (sd < 0) return out;
  const Rat vertex = -b / (2 * a);
  if (sd == 0) {
    out.roots.emplace_back(vertex);
    return out;
  }
  // sqrt(p/q) = sqrt(p q) / q
  const Int& p = disc.get_num();
  const Int& q = disc.get_den();
  Int root_num;
  Int root_den;
  if (perfect_square(p, &root_num) && perfect_square(q, &root_den)) {
    Rat offset = Rat(root_num, root_den) / (2 * a);
    offset.canonicalize();
    out.roots.emplace_back(Rat(vertex - abs(offset)));
    out.roots.emplace_back(Rat(vertex + abs(offset)));
    return out;
  }
  Rat coeff = 1 / (2 * a * Rat(q));
  coeff = abs(coeff);
  out.roots.emplace_back(vertex, Rat(-coeff), Int(p * q));
  out.roots.emplace_back(vertex, coeff, Int(p * q));
  return out;
}

std::pair<Rat, Rat> enclose(const QuadExt& x, unsigned bits) {
  if (x.is_rational()) return {x.a(), x.a()};
  const Rat mag = abs(x.b());
  unsigned extra = 1;
  if (mag > 1) extra += static_cast<unsigned>(mpz_sizeinbase(ceil_rat(mag).get_mpz_t(), 2));
  const unsigned total = bits + extra;
  Int scaled = x.d();
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * total);
  Int s;
  mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
  Int pow2;
  mpz_setbit(pow2.get_mpz_t(), total);
  Rat lo_root(s, pow2);
  Rat hi_root(Int(s + 1), pow2);
  lo_root.canonicalize();
  hi_root.canonicalize();
  Rat lo = x.a() + x.b() * lo_root;
  Rat hi = x.a() + x.b() * hi_root;
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

Rat rational_between(const Ext& lo, const Ext& hi) {
  if (!(lo < hi)) throw Error(ErrorKind::PreconditionViolated, "rational_between on an empty interval");
  if (lo.is_neg_inf() && hi.is_pos_inf()) return Rat(0);
  if (lo.is_neg_inf()) {
    const Rat bound = enclose(hi.value(), 8).first;
    return Rat(floor_rat(bound) - 1);
  }
  if (hi.is_pos_inf()) {
    const Rat bound = enclose(lo.value(), 8).second;
    return Rat(ceil_rat(bound) + 1);
  }
  const QuadExt& x = lo.value();
  const QuadExt& y = hi.value();
  if (x.is_rational() && y.is_rational()) return simplest_between(x.a(), y.a());
  for (unsigned bits = 32;; bits *= 2) {
    const Rat upper_x = enclose(x, bits).second;
    const Rat lower_y = enclose(y, bits).first;
    if (upper_x < lower_y) return simplest_between(upper_x, lower_y);
  }
}

int QuadPoly::degree() const {
  if (sgn(c2) != 0) return 2;
  if (sgn(c1) != 0) return 1;
  if (sgn(c0) != 0) return 0;
  return -1;
}

bool canonical_less(const QuadPoly& p, const QuadPoly& q) {
  if (int c = cmp(p.c2, q.c2); c != 0) return c < 0;
  if (int c = cmp(p.c1, q.c1); c != 0) return c < 0;
  return cmp(p.c0, q.c0) < 0;
}

}  // namespace cutting_forge
