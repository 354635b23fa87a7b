#include "cutting_forge/region.hpp"

#include <algorithm>
#include <optional>

namespace cutting_forge {

namespace {

void add_roots_inside(const QuadPoly& diff, const Ext& left, const Ext& right, std::vector<QuadExt>& out) {
  const QuadraticRoots roots = diff.roots();
  if (roots.all_reals) return;
  for (const QuadExt& r : roots.roots) {
    const Ext e(r);
    if (left < e && e < right) out.push_back(r);
  }
}

void sort_unique(std::vector<QuadExt>& xs) {
  std::sort(xs.begin(), xs.end(), [](const QuadExt& a, const QuadExt& b) { return qe_cmp(a, b) == Ordering::LT; });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}

// Rational sample abscissae, one inside each open gap between consecutive
// critical points (and the interval ends).
std::vector<Rat> gap_samples(const Ext& left, const Ext& right, const std::vector<QuadExt>& critical) {
  std::vector<Rat> samples;
  samples.reserve(critical.size() + 1);
  Ext prev = left;
  for (const QuadExt& c : critical) {
    const Ext next(c);
    samples.push_back(rational_between(prev, next));
    prev = next;
  }
  samples.push_back(rational_between(prev, right));
  return samples;
}

std::vector<QuadPoly> dedupe(const std::vector<QuadPoly>& polys) {
  std::vector<QuadPoly> out;
  for (const QuadPoly& p : polys) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

struct Scan {
  bool nonempty = false;
  bool crossed = false;
};

// Tracks the distinct signs of x1 - h seen over a region.
struct SignSet {
  bool neg = false;
  bool zero = false;
  bool pos = false;
  void add(int s) { (s < 0 ? neg : (s > 0 ? pos : zero)) = true; }
  int distinct() const { return int(neg) + int(zero) + int(pos); }
};

template <class Scalar>
bool strictly_inside(const Scalar& v, const Scalar& x, const Band& band) {
  for (const QuadPoly& l : band.lower) {
    if (!(l(x) < v)) return false;
  }
  for (const QuadPoly& u : band.upper) {
    if (!(v < u(x))) return false;
  }
  return true;
}

Scan scan_carriers(const Band& band, const std::vector<QuadPoly>& carriers, const QuadPoly* h, bool want_cross) {
  Scan out;
  SignSet signs;
  const QuadPoly& g = carriers.front();
  if (carriers.size() >= 2) {
    std::vector<QuadExt> xs;
    add_roots_inside(g - carriers[1], band.left, band.right, xs);
    for (const QuadExt& x : xs) {
      const QuadExt v = g(x);
      bool on_all = true;
      for (std::size_t i = 2; i < carriers.size() && on_all; ++i) on_all = carriers[i](x) == v;
      if (!on_all || !strictly_inside(v, x, band)) continue;
      out.nonempty = true;
      if (!want_cross) return out;
      signs.add((v - (*h)(x)).sign());
    }
    out.crossed = signs.distinct() >= 2;
    return out;
  }
  std::vector<QuadExt> critical;
  for (const QuadPoly& l : band.lower) add_roots_inside(g - l, band.left, band.right, critical);
  for (const QuadPoly& u : band.upper) add_roots_inside(u - g, band.left, band.right, critical);
  if (want_cross && !(*h == g)) add_roots_inside(g - *h, band.left, band.right, critical);
  sort_unique(critical);
  for (const Rat& q : gap_samples(band.left, band.right, critical)) {
    const Rat v = g(q);
    if (!strictly_inside(v, q, band)) continue;
    out.nonempty = true;
    if (!want_cross) return out;
    signs.add(sgn(Rat(v - (*h)(q))));
  }
  for (const QuadExt& x : critical) {
    const QuadExt v = g(x);
    if (!strictly_inside(v, x, band)) continue;
    out.nonempty = true;
    if (!want_cross) return out;
    signs.add((v - (*h)(x)).sign());
  }
  out.crossed = signs.distinct() >= 2;
  return out;
}

Scan scan_open(const Band& band, const QuadPoly* h, bool want_cross) {
  Scan out;
  const bool trivially_nonempty = band.ordered_bounds && band.lower.size() <= 1 && band.upper.size() <= 1;
  if (!want_cross && trivially_nonempty) {
    out.nonempty = true;
    return out;
  }
  std::vector<const QuadPoly*> polys;
  for (const QuadPoly& l : band.lower) polys.push_back(&l);
  for (const QuadPoly& u : band.upper) polys.push_back(&u);
  const std::size_t bounds = polys.size();
  if (want_cross) polys.push_back(h);
  std::vector<QuadExt> critical;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (trivially_nonempty && j < bounds) continue;
      if (*polys[i] == *polys[j]) continue;
      add_roots_inside(*polys[i] - *polys[j], band.left, band.right, critical);
    }
  }
  sort_unique(critical);
  bool above = false;
  bool below = false;
  for (const Rat& q : gap_samples(band.left, band.right, critical)) {
    std::optional<Rat> lo;
    std::optional<Rat> hi;
    for (const QuadPoly& l : band.lower) {
      Rat v = l(q);
      if (!lo || *lo < v) lo = std::move(v);
    }
    for (const QuadPoly& u : band.upper) {
      Rat v = u(q);
      if (!hi || v < *hi) hi = std::move(v);
    }
    if (lo && hi && !(*lo < *hi)) continue;
    out.nonempty = true;
    if (!want_cross) return out;
    const Rat hv = (*h)(q);
    if (lo && hv <= *lo) {
      above = true;
    } else if (hi && hv >= *hi) {
      below = true;
    } else {
      out.crossed = true;
      return out;
    }
  }
  out.crossed = above && below;
  return out;
}

Scan scan_band(const Band& band, const QuadPoly* h, bool want_cross) {
  if (!(band.left < band.right)) return {};
  if (band.carriers.empty()) return scan_open(band, h, want_cross);
  const std::vector<QuadPoly> carriers = band.carriers.size() == 1 ? band.carriers : dedupe(band.carriers);
  return scan_carriers(band, carriers, h, want_cross);
}

Region intersect_slices(const Slice& a, const Slice& b) {
  if (!(a.at == b.at)) return EmptyRegion{};
  if (a.is_point && b.is_point) return a.point == b.point ? Region(a) : Region(EmptyRegion{});
  if (a.is_point || b.is_point) {
    const Slice& p = a.is_point ? a : b;
    const Slice& s = a.is_point ? b : a;
    const Ext v(p.point);
    if (s.lower < v && v < s.upper) return p;
    return EmptyRegion{};
  }
  Slice out = a;
  out.lower = std::max(a.lower, b.lower);
  out.upper = std::min(a.upper, b.upper);
  if (!(out.lower < out.upper)) return EmptyRegion{};
  return out;
}

Region restrict_band(const Band& band, const QuadExt& at) {
  const Ext x(at);
  if (!(band.left < x && x < band.right)) return EmptyRegion{};
  Slice out;
  out.at = at;
  Ext lo = Ext::neg_inf();
  Ext hi = Ext::pos_inf();
  for (const QuadPoly& l : band.lower) lo = std::max(lo, Ext(l(at)));
  for (const QuadPoly& u : band.upper) hi = std::min(hi, Ext(u(at)));
  if (!band.carriers.empty()) {
    const QuadExt v = band.carriers.front()(at);
    for (const QuadPoly& g : band.carriers) {
      if (!(g(at) == v)) return EmptyRegion{};
    }
    const Ext ve(v);
    if (!(lo < ve && ve < hi)) return EmptyRegion{};
    out.is_point = true;
    out.point = v;
    out.lower = ve;
    out.upper = ve;
    return out;
  }
  if (!(lo < hi)) return EmptyRegion{};
  out.lower = lo;
  out.upper = hi;
  return out;
}

}  // namespace

Region intersect(const Region& x, const Region& y) {
  if (std::holds_alternative<EmptyRegion>(x) || std::holds_alternative<EmptyRegion>(y)) return EmptyRegion{};
  if (const auto* sx = std::get_if<Slice>(&x)) {
    if (const auto* sy = std::get_if<Slice>(&y)) return intersect_slices(*sx, *sy);
    return intersect(y, x);
  }
  const Band& bx = std::get<Band>(x);
  if (const auto* sy = std::get_if<Slice>(&y)) {
    Region restricted = restrict_band(bx, sy->at);
    if (const auto* s = std::get_if<Slice>(&restricted)) return intersect_slices(*s, *sy);
    return EmptyRegion{};
  }
  const Band& by = std::get<Band>(y);
  Band out;
  out.left = std::max(bx.left, by.left);
  out.right = std::min(bx.right, by.right);
  if (!(out.left < out.right)) return EmptyRegion{};
  out.carriers = bx.carriers;
  out.carriers.insert(out.carriers.end(), by.carriers.begin(), by.carriers.end());
  out.lower = bx.lower;
  out.lower.insert(out.lower.end(), by.lower.begin(), by.lower.end());
  out.upper = bx.upper;
  out.upper.insert(out.upper.end(), by.upper.begin(), by.upper.end());
  return out;
}

bool is_empty(const Region& region) {
  if (std::holds_alternative<EmptyRegion>(region)) return true;
  if (const auto* s = std::get_if<Slice>(&region)) return !s->is_point && !(s->lower < s->upper);
  return !scan_band(std::get<Band>(region), nullptr, false).nonempty;
}

bool crosses(const QuadPoly& h, const Region& region) {
  if (std::holds_alternative<EmptyRegion>(region)) return false;
  if (const auto* s = std::get_if<Slice>(&region)) {
    if (s->is_point) return false;
    const Ext v(h(s->at));
    return s->lower < v && v < s->upper;
  }
  return scan_band(std::get<Band>(region), &h, true).crossed;
}

bool contains(const Region& region, const Rat& x1, const Rat& x2) {
  if (std::holds_alternative<EmptyRegion>(region)) return false;
  if (const auto* s = std::get_if<Slice>(&region)) {
    if (!(s->at == QuadExt(x2))) return false;
    if (s->is_point) return s->point == QuadExt(x1);
    const Ext v(x1);
    return s->lower < v && v < s->upper;
  }
  const Band& b = std::get<Band>(region);
  const Ext x(x2);
  if (!(b.left < x && x < b.right)) return false;
  for (const QuadPoly& g : b.carriers) {
    if (g(x2) != x1) return false;
  }
  return strictly_inside(x1, x2, b);
}

std::optional<std::pair<Rat, Rat>> rational_witness(const Region& region) {
  if (std::holds_alternative<EmptyRegion>(region)) return std::nullopt;
  if (const auto* s = std::get_if<Slice>(&region)) {
    if (!s->at.is_rational()) return std::nullopt;
    if (s->is_point) {
      if (!s->point.is_rational()) return std::nullopt;
      return std::pair{s->point.a(), s->at.a()};
    }
    if (!(s->lower < s->upper)) return std::nullopt;
    return std::pair{rational_between(s->lower, s->upper), s->at.a()};
  }
  const Band& b = std::get<Band>(region);
  if (!(b.left < b.right)) return std::nullopt;
  std::vector<QuadExt> critical;
  std::vector<QuadPoly> polys = b.carriers;
  polys.insert(polys.end(), b.lower.begin(), b.lower.end());
  polys.insert(polys.end(), b.upper.begin(), b.upper.end());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    for (std::size_t j = i + 1; j < polys.size(); ++j) {
      if (!(polys[i] == polys[j])) add_roots_inside(polys[i] - polys[j], b.left, b.right, critical);
    }
  }
  sort_unique(critical);
  for (const Rat& q : gap_samples(b.left, b.right, critical)) {
    if (!b.carriers.empty()) {
      const Rat v = b.carriers.front()(q);
      if (contains(region, v, q)) return std::pair{v, q};
      continue;
    }
    Ext lo = Ext::neg_inf();
    Ext hi = Ext::pos_inf();
    for (const QuadPoly& l : b.lower) lo = std::max(lo, Ext(Rat(l(q))));
    for (const QuadPoly& u : b.upper) hi = std::min(hi, Ext(Rat(u(q))));
    if (lo < hi) return std::pair{rational_between(lo, hi), q};
  }
  for (const QuadExt& x : critical) {
    if (!x.is_rational() || b.carriers.empty()) continue;
    const Rat v = b.carriers.front()(x.a());
    if (contains(region, v, x.a())) return std::pair{v, x.a()};
  }
  return std::nullopt;
}

}  // namespace cutting_forge
