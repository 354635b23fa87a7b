#include "cutting_forge/incidence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "cutting_forge/error.hpp"
#include "cutting_forge/fit.hpp"
#include "cutting_forge/random.hpp"

namespace cutting_forge {

namespace {

bool on_curve(const QuadPoly& h, const RatPoint& p) { return h(p.x2) == p.x1; }

std::vector<Edge> sorted_unique(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::size_t> intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// Partial Fisher-Yates: `count` distinct indices of [0, n), ascending.
std::vector<std::size_t> choose(std::size_t n, std::size_t count, std::mt19937_64& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  count = std::min(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = static_cast<std::size_t>(
        uniform_int(rng, static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1)));
    std::swap(all[i], all[j]);
  }
  all.resize(count);
  std::sort(all.begin(), all.end());
  return all;
}

CurveParam line(const Rat& a, const Rat& b) { return CurveParam{{a, b}}; }

}  // namespace

IncidenceInstance deduplicate(IncidenceInstance inst) {
  std::vector<std::size_t> point_map(inst.points.size());
  std::vector<RatPoint> points;
  std::map<std::pair<Rat, Rat>, std::size_t> seen_points;
  for (std::size_t i = 0; i < inst.points.size(); ++i) {
    const auto [it, fresh] = seen_points.emplace(std::pair(inst.points[i].x1, inst.points[i].x2), points.size());
    if (fresh) points.push_back(inst.points[i]);
    point_map[i] = it->second;
  }
  std::vector<std::size_t> curve_map(inst.curves.size());
  std::vector<CurveParam> curves;
  std::map<std::vector<Rat>, std::size_t> seen_curves;
  for (std::size_t i = 0; i < inst.curves.size(); ++i) {
    inst.family.check(inst.curves[i]);
    const auto [it, fresh] = seen_curves.emplace(inst.curves[i].coeffs, curves.size());
    if (fresh) curves.push_back(inst.curves[i]);
    curve_map[i] = it->second;
  }
  if (inst.edges) {
    for (auto& e : *inst.edges) {
      if (e.point >= point_map.size() || e.curve >= curve_map.size())
        throw Error(ErrorKind::PreconditionViolated, "edge endpoint out of range");
      e = {point_map[e.point], curve_map[e.curve]};
    }
    inst.edges = sorted_unique(std::move(*inst.edges));
  }
  inst.points = std::move(points);
  inst.curves = std::move(curves);
  return inst;
}

IncidenceCount count_incidences_brute(const IncidenceInstance& inst) {
  IncidenceCount out;
  if (inst.edges) {
    out.edges = sorted_unique(*inst.edges);
  } else {
    for (std::size_t j = 0; j < inst.curves.size(); ++j) {
      const QuadPoly h = inst.family.branch(1, inst.curves[j]);
      for (std::size_t i = 0; i < inst.points.size(); ++i)
        if (on_curve(h, inst.points[i])) out.edges.push_back({i, j});
    }
    std::sort(out.edges.begin(), out.edges.end());
  }
  out.count = out.edges.size();
  return out;
}

IncidenceCount count_incidences(const IncidenceInstance& inst) {
  if (inst.edges) return count_incidences_brute(inst);
  IncidenceCount out;
  std::vector<QuadPoly> polys;
  polys.reserve(inst.curves.size());
  for (const auto& s : inst.curves) polys.push_back(inst.family.branch(1, s));

  // Two ways to avoid the full m*n scan: group curves by everything but the
  // constant term and solve for it per point, or group points by abscissa
  // and evaluate each curve once per abscissa. Pick the cheaper.
  std::map<std::pair<Rat, Rat>, std::map<Rat, std::vector<std::size_t>>> by_shape;
  for (std::size_t j = 0; j < polys.size(); ++j)
    by_shape[{polys[j].c1, polys[j].c2}][polys[j].c0].push_back(j);
  std::map<Rat, std::map<Rat, std::vector<std::size_t>>> by_x2;
  for (std::size_t i = 0; i < inst.points.size(); ++i)
    by_x2[inst.points[i].x2][inst.points[i].x1].push_back(i);

  if (inst.points.size() * by_shape.size() <= inst.curves.size() * by_x2.size()) {
    for (std::size_t i = 0; i < inst.points.size(); ++i) {
      const auto& p = inst.points[i];
      for (const auto& [shape, consts] : by_shape) {
        const Rat c0 = p.x1 - shape.first * p.x2 - shape.second * p.x2 * p.x2;
        const auto it = consts.find(c0);
        if (it == consts.end()) continue;
        for (std::size_t j : it->second) out.edges.push_back({i, j});
      }
    }
  } else {
    for (std::size_t j = 0; j < polys.size(); ++j) {
      for (const auto& [x2, column] : by_x2) {
        const auto it = column.find(polys[j](x2));
        if (it == column.end()) continue;
        for (std::size_t i : it->second) out.edges.push_back({i, j});
      }
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.count = out.edges.size();
  return out;
}

KkkResult is_kkk_free(std::size_t m, std::size_t n, std::span<const Edge> edges, std::size_t k,
                      std::size_t node_budget) {
  if (k == 0) throw Error(ErrorKind::PreconditionViolated, "k must be at least 1");
  std::vector<std::vector<std::size_t>> adj_p(m), adj_c(n);
  for (const auto& e : edges) {
    if (e.point >= m || e.curve >= n) throw Error(ErrorKind::PreconditionViolated, "edge endpoint out of range");
    adj_p[e.point].push_back(e.curve);
    adj_c[e.curve].push_back(e.point);
  }
  for (auto& v : adj_p) v.erase(std::unique((std::sort(v.begin(), v.end()), v.begin()), v.end()), v.end());
  for (auto& v : adj_c) v.erase(std::unique((std::sort(v.begin(), v.end()), v.begin()), v.end()), v.end());

  // Iterated deletion of vertices of degree < k.
  std::vector<char> alive_p(m, 1), alive_c(n, 1);
  std::vector<std::size_t> deg_p(m), deg_c(n);
  std::vector<std::pair<bool, std::size_t>> queue;  // (is_curve, index)
  for (std::size_t i = 0; i < m; ++i) {
    deg_p[i] = adj_p[i].size();
    if (deg_p[i] < k) queue.emplace_back(false, i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    deg_c[j] = adj_c[j].size();
    if (deg_c[j] < k) queue.emplace_back(true, j);
  }
  while (!queue.empty()) {
    const auto [is_curve, v] = queue.back();
    queue.pop_back();
    auto& alive = is_curve ? alive_c : alive_p;
    if (!alive[v]) continue;
    alive[v] = 0;
    const auto& nbrs = is_curve ? adj_c[v] : adj_p[v];
    auto& other_alive = is_curve ? alive_p : alive_c;
    auto& other_deg = is_curve ? deg_p : deg_c;
    for (std::size_t w : nbrs) {
      if (!other_alive[w]) continue;
      if (--other_deg[w] < k) queue.emplace_back(!is_curve, w);
    }
  }

  std::vector<std::size_t> live_p, live_c;
  for (std::size_t i = 0; i < m; ++i)
    if (alive_p[i]) live_p.push_back(i);
  for (std::size_t j = 0; j < n; ++j)
    if (alive_c[j]) live_c.push_back(j);

  KkkResult result;
  if (live_p.size() < k || live_c.size() < k) return result;

  const bool search_curves = live_c.size() < live_p.size();
  const auto& side = search_curves ? live_c : live_p;
  const auto& other_alive = search_curves ? alive_p : alive_c;
  std::vector<std::vector<std::size_t>> nbr(side.size());
  for (std::size_t s = 0; s < side.size(); ++s) {
    for (std::size_t w : search_curves ? adj_c[side[s]] : adj_p[side[s]])
      if (other_alive[w]) nbr[s].push_back(w);
  }

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> found_common;
  auto search = [&](auto&& self, std::size_t start, const std::vector<std::size_t>& common) -> bool {
    if (chosen.size() == k) {
      found_common = common;
      return true;
    }
    for (std::size_t s = start; s + (k - chosen.size()) <= side.size(); ++s) {
      if (++result.nodes > node_budget)
        throw Error(ErrorKind::CombinatorialBudgetExceeded,
                    "K_{k,k} search exceeded " + std::to_string(node_budget) + " nodes");
      std::vector<std::size_t> next = chosen.empty() ? nbr[s] : intersect(common, nbr[s]);
      if (next.size() < k) continue;
      chosen.push_back(s);
      if (self(self, s + 1, next)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!search(search, 0, {})) return result;

  KkkWitness w;
  std::vector<std::size_t> mine;
  for (std::size_t s : chosen) mine.push_back(side[s]);
  std::vector<std::size_t> theirs(found_common.begin(), found_common.begin() + static_cast<std::ptrdiff_t>(k));
  if (search_curves) {
    w.curves = std::move(mine);
    w.points = std::move(theirs);
  } else {
    w.points = std::move(mine);
    w.curves = std::move(theirs);
  }
  result.free = false;
  result.witness = std::move(w);
  return result;
}

double zarankiewicz_bound(double m, double n, unsigned d, unsigned /*k*/, double c) {
  if (d < 2 || m < 1 || n < 1 || !(c > 0))
    throw Error(ErrorKind::PreconditionViolated, "zarankiewicz_bound needs d >= 2, m, n >= 1, c > 0");
  const double den = 2.0 * d - 1;
  return c * (std::pow(m, d / den) * std::pow(n, (2.0 * d - 2) / den) + m + n);
}

double kst_bound(double m, double n, unsigned d, double c1) {
  if (d < 1) throw Error(ErrorKind::PreconditionViolated, "kst_bound needs d >= 1");
  return c1 * (m * std::pow(n, 1.0 - 1.0 / d) + n);
}

ShatterProfile shatter_function(const SetSystem& sys, std::size_t z_max) {
  if (sys.ground > kMaxShatterGround)
    throw Error(ErrorKind::GroundSetTooLarge,
                "ground set of " + std::to_string(sys.ground) + " exceeds " + std::to_string(kMaxShatterGround));
  if (z_max > sys.ground) throw Error(ErrorKind::PreconditionViolated, "z_max exceeds the ground set");
  std::vector<std::uint32_t> masks;
  for (const auto& s : sys.sets) {
    std::uint32_t mask = 0;
    for (std::size_t e : s) {
      if (e < 1 || e > sys.ground) throw Error(ErrorKind::PreconditionViolated, "element outside the ground set");
      mask |= std::uint32_t{1} << (e - 1);
    }
    masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  ShatterProfile out;
  out.ground = sys.ground;
  std::vector<std::uint32_t> traces(masks.size());
  for (std::size_t z = 1; z <= z_max; ++z) {
    const std::size_t ceiling = z < 32 ? std::min<std::size_t>(masks.size(), std::size_t{1} << z) : masks.size();
    std::size_t best = 0;
    const std::uint32_t limit = std::uint32_t{1} << sys.ground;
    // Gosper's hack walks the z-subsets in increasing order.
    for (std::uint32_t a = (std::uint32_t{1} << z) - 1; a < limit && best < ceiling;) {
      for (std::size_t i = 0; i < masks.size(); ++i) traces[i] = masks[i] & a;
      std::sort(traces.begin(), traces.end());
      const auto distinct = static_cast<std::size_t>(std::unique(traces.begin(), traces.end()) - traces.begin());
      best = std::max(best, distinct);
      const std::uint32_t c = a & (~a + 1);
      const std::uint32_t r = a + c;
      if (r == 0 || c == 0) break;
      a = (((r ^ a) >> 2) / c) | r;
    }
    out.values.push_back(best);
  }

  std::vector<double> xs, ys;
  for (std::size_t z = z_max - (z_max / 2); z <= z_max && z >= 1; ++z) {
    if (out.values[z - 1] == 0) continue;
    xs.push_back(static_cast<double>(z));
    ys.push_back(static_cast<double>(out.values[z - 1]));
  }
  if (xs.size() >= 2) {
    const auto fit = loglog_fit(xs, ys);
    out.slope = fit.slope;
    out.constant = std::exp(fit.intercept);
  }
  return out;
}

SetSystem curve_neighbourhoods(const CurveFamily& family, std::span<const RatPoint> points,
                               std::span<const CurveParam> curves) {
  SetSystem out;
  out.ground = points.size();
  for (const auto& s : curves) {
    const QuadPoly h = family.branch(1, s);
    std::vector<std::size_t> nb;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (on_curve(h, points[i])) nb.push_back(i + 1);
    out.sets.push_back(std::move(nb));
  }
  return out;
}

PointLineSystem dual_line_system(std::size_t z, std::size_t extra, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0xD1));
  PointLineSystem out;
  auto collinear = [](const RatPoint& a, const RatPoint& b, const RatPoint& c) {
    return (b.x1 - a.x1) * (c.x2 - a.x2) == (c.x1 - a.x1) * (b.x2 - a.x2);
  };
  // Distinct abscissae keep every connecting line non-vertical.
  while (out.points.size() < z) {
    RatPoint p{Rat(uniform_int(rng, -60, 60)), Rat(uniform_int(rng, -60, 60))};
    bool ok = true;
    for (std::size_t i = 0; i < out.points.size() && ok; ++i) {
      if (out.points[i].x2 == p.x2) ok = false;
      for (std::size_t j = i + 1; j < out.points.size() && ok; ++j)
        if (collinear(out.points[i], out.points[j], p)) ok = false;
    }
    if (ok) out.points.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < z; ++i) {
    for (std::size_t j = i + 1; j < z; ++j) {
      const auto& p = out.points[i];
      const auto& q = out.points[j];
      const Rat a = (q.x1 - p.x1) / (q.x2 - p.x2);
      out.lines.push_back(line(a, p.x1 - a * p.x2));
    }
  }
  for (std::size_t e = 0; e < extra; ++e)
    out.lines.push_back(line(Rat(uniform_int(rng, -9, 9)), Rat(uniform_int(rng, -60, 60))));
  return out;
}

IncidenceInstance generate_grid_st(std::size_t N) {
  std::size_t k = static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(N))));
  if (k < 2 || k * k * k != N) throw Error(ErrorKind::NotACube, std::to_string(N) + " is not a cube >= 8");
  IncidenceInstance inst;
  for (std::size_t x2 = 1; x2 <= k; ++x2)
    for (std::size_t x1 = 1; x1 <= 2 * k * k; ++x1)
      inst.points.push_back({Rat(static_cast<long>(x1)), Rat(static_cast<long>(x2))});
  for (std::size_t a = 1; a <= k; ++a)
    for (std::size_t b = 1; b <= k * k; ++b) inst.curves.push_back(line(Rat(static_cast<long>(a)), Rat(static_cast<long>(b))));
  return inst;
}

double exponent_fit(std::span<const ExponentSample> samples) {
  if (samples.size() < 3) throw Error(ErrorKind::PreconditionViolated, "exponent_fit needs at least 3 samples");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i > 0 && !(samples[i].n > samples[i - 1].n))
      throw Error(ErrorKind::PreconditionViolated, "n must be strictly increasing");
    if (!(samples[i].count > 0)) throw Error(ErrorKind::PreconditionViolated, "counts must be positive");
    xs.push_back(samples[i].n);
    ys.push_back(samples[i].count);
  }
  return loglog_fit(xs, ys).slope;
}

std::vector<IncidenceInstance> incidence_fuzz_instances(std::size_t count, std::size_t n_max, std::uint64_t seed) {
  if (n_max < 10) throw Error(ErrorKind::PreconditionViolated, "n_max must be at least 10");
  std::vector<IncidenceInstance> out;
  for (std::size_t t = 0; t < count; ++t) {
    std::mt19937_64 rng(derive_seed(seed, t));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto n = static_cast<std::size_t>(std::exp(std::log(10.0) + u(rng) * (std::log(static_cast<double>(n_max)) - std::log(10.0))));
    n = std::clamp<std::size_t>(n, 10, n_max);
    IncidenceInstance inst;
    switch (t % 3) {
      case 0: {  // random sub-grid of the smallest grid with at least n lines
        std::size_t k = 2;
        while (k * k * k < n) ++k;
        const auto grid = generate_grid_st(k * k * k);
        for (std::size_t i : choose(grid.points.size(), n, rng)) inst.points.push_back(grid.points[i]);
        for (std::size_t j : choose(grid.curves.size(), n, rng)) inst.curves.push_back(grid.curves[j]);
        break;
      }
      case 1: {  // points dropped on random lines of few slopes
        const auto span = static_cast<std::int64_t>(n);
        std::map<std::vector<Rat>, bool> seen;
        while (inst.curves.size() < n) {
          auto c = line(Rat(uniform_int(rng, -10, 10)), Rat(uniform_int(rng, -span, span)));
          if (seen.emplace(c.coeffs, true).second) inst.curves.push_back(std::move(c));
        }
        std::map<std::pair<Rat, Rat>, bool> seen_p;
        while (inst.points.size() < n) {
          const auto& c = inst.curves[static_cast<std::size_t>(uniform_int(rng, 0, span - 1))];
          const Rat x2(uniform_int(rng, -span, span));
          RatPoint p{c.coeffs[0] * x2 + c.coeffs[1], x2};
          if (seen_p.emplace(std::pair(p.x1, p.x2), true).second) inst.points.push_back(std::move(p));
        }
        break;
      }
      default: {  // a pencil through the origin and points on one of its lines
        n = std::min<std::size_t>(n, 1000);
        for (std::size_t a = 1; a <= n; ++a) inst.curves.push_back(line(Rat(static_cast<long>(a)), Rat(0)));
        for (std::size_t j = 0; j < n; ++j)
          inst.points.push_back({Rat(static_cast<long>(j)), Rat(static_cast<long>(j))});
        break;
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

double calibrate_zarankiewicz() {
  const auto grid = generate_grid_st(27);
  const auto count = static_cast<double>(count_incidences(grid).count);
  return count / zarankiewicz_bound(static_cast<double>(grid.points.size()), static_cast<double>(grid.curves.size()), 2, 2, 1.0);
}

double calibrate_kst() {
  const auto grid = generate_grid_st(27);
  const auto count = static_cast<double>(count_incidences(grid).count);
  return count / kst_bound(static_cast<double>(grid.points.size()), static_cast<double>(grid.curves.size()), 2, 1.0);
}

}  // namespace cutting_forge
