#include "cutting_forge/cutting.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "cutting_forge/random.hpp"

namespace cutting_forge {

std::vector<std::size_t> bernoulli_sample(std::size_t n, const SampleConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    if (u < cfg.p) out.push_back(i);
  }
  return out;
}

std::vector<CurveParam> bernoulli_sample(std::span<const CurveParam> H, const SampleConfig& cfg) {
  std::vector<CurveParam> out;
  for (std::size_t i : bernoulli_sample(H.size(), cfg)) out.push_back(H[i]);
  return out;
}

double solve_A(double C, unsigned d) {
  const double k = 3.0 * std::pow(2.0, 2.0 * d) * C;
  auto f = [&](double a) { return a * std::log(2.0) - std::log(k) - d * std::log(a); };
  double lo = 1;
  double hi = 64;
  if (f(lo) >= 0) return lo;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return hi;
}

Calibration calibrate(const CurveFamily& family, std::uint64_t seed) {
  Calibration cal;
  std::uint64_t stream = 0;
  for (std::size_t n = 4; n <= 16; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      std::mt19937_64 rng(derive_seed(seed, stream++));
      CellComplex complex(family, random_curves(family, n, rng));
      const double ratio = static_cast<double>(complex.size()) / static_cast<double>(n * n);
      cal.C = std::max(cal.C, ratio);
    }
  }
  cal.A = solve_A(cal.C, cal.d);
  return cal;
}

const Calibration& default_calibration(const CurveFamily& family) {
  static std::mutex mu;
  static std::map<FamilyKind, Calibration> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(family.kind());
  if (it == cache.end()) it = cache.emplace(family.kind(), calibrate(family)).first;
  return it->second;
}

std::string format_trail(std::span<const TrailEntry> trail) {
  std::ostringstream os;
  for (const TrailEntry& e : trail) {
    os << e.stage << "#" << e.attempt << " seed=" << e.seed << " |S|=" << e.sample_size << " cells=" << e.cells
       << (e.accepted ? " accepted" : " rejected") << "; ";
  }
  return os.str();
}

namespace {

std::vector<QuadPoly> polys_of(const CurveFamily& family, std::span<const CurveParam> H) {
  std::vector<QuadPoly> out;
  out.reserve(H.size());
  for (const CurveParam& s : H) out.push_back(family.branch(1, s));
  return out;
}

void check_r(const Rat& r, std::size_t n) {
  if (!(r > 1) || !(r < Rat(static_cast<unsigned long>(n)))) {
    throw Error(ErrorKind::PreconditionViolated,
                "need 1 < r < n, got r = " + format_rat(r) + " with n = " + std::to_string(n) + " distinct curves");
  }
}

// count <= n / r, exactly.
bool under(std::size_t count, const Rat& r, std::size_t n) {
  return Rat(static_cast<unsigned long>(count)) * r <= Rat(static_cast<unsigned long>(n));
}

struct Sub {
  std::shared_ptr<const CellComplex> complex;
  std::vector<std::vector<std::size_t>> sets;  // indices into the given H
};

// x-range a complex has to be exact on.
struct Window {
  Ext lo = Ext::neg_inf();
  Ext hi = Ext::pos_inf();
  bool full() const { return lo.is_neg_inf() && hi.is_pos_inf(); }
};

std::shared_ptr<const CellComplex> build_subset(const CurveFamily& family, std::span<const CurveParam> H,
                                                const std::vector<std::size_t>& idx, const Window& w = {}) {
  std::vector<CurveParam> params;
  params.reserve(idx.size());
  for (std::size_t i : idx) params.push_back(H[i]);
  if (w.full()) return std::make_shared<const CellComplex>(family, std::move(params));
  return std::make_shared<const CellComplex>(family, std::move(params), w.lo, w.hi);
}

Window window_of(const Cell& cell) {
  return std::visit(
      [](const auto& shape) -> Window {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, TwoDimCell> || std::is_same_v<T, ArcCell>) {
          return {shape.left, shape.right};
        } else if constexpr (std::is_same_v<T, VerticalCell>) {
          return {Ext(shape.at), Ext(shape.at)};
        } else {
          return {Ext(shape.p.x2), Ext(shape.p.x2)};
        }
      },
      cell.shape);
}

Sub suboptimal_core(const CurveFamily& family, std::span<const CurveParam> H, const std::vector<QuadPoly>& polys,
                    const Rat& r, const SampleConfig& cfg, const Calibration& cal, std::vector<TrailEntry>& trail,
                    const std::string& stage, const Window& window = {}) {
  const std::size_t n = H.size();
  const double rd = r.get_d();
  const double log_term = std::log2(rd + 1);
  Sub sub;
  if (2 * cal.A * rd * log_term >= static_cast<double>(n)) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    sub.complex = build_subset(family, H, all, window);
    // No curve crosses a cell of its own decomposition (inside the window).
    sub.sets.assign(sub.complex->size(), {});
    trail.push_back({stage + ":direct", cfg.seed, 0, n, sub.complex->size(), true});
    return sub;
  }
  const double r_prime = cal.A * rd * log_term;
  const double size_budget = 3 * cal.C * std::pow(cal.A, cal.d) * std::pow(rd, cal.d) * std::pow(log_term, cal.d);
  for (std::size_t attempt = 0; attempt < cfg.max_retries; ++attempt) {
    SampleConfig sc{r_prime / static_cast<double>(n), derive_seed(cfg.seed, attempt), cfg.max_retries};
    std::vector<std::size_t> idx = bernoulli_sample(n, sc);
    auto complex = build_subset(family, H, idx, window);
    bool ok = static_cast<double>(complex->size()) <= size_budget;
    std::vector<std::vector<std::size_t>> sets;
    if (ok) {
      sets = complex->crossing_sets(polys);
      for (const auto& s : sets) {
        if (!under(s.size(), r, n)) {
          ok = false;
          break;
        }
      }
    }
    trail.push_back({stage, sc.seed, attempt, idx.size(), complex->size(), ok});
    if (ok) {
      sub.complex = std::move(complex);
      sub.sets = std::move(sets);
      return sub;
    }
  }
  throw Error(ErrorKind::RetryBudgetExhausted,
              "no sample met the cutting conditions after " + std::to_string(cfg.max_retries) +
                  " attempts: " + format_trail(trail));
}

void fill_direct(Cutting& cut, Sub sub) {
  cut.complex = std::move(sub.complex);
  cut.outer_piece.assign(cut.complex->size(), Cutting::npos);
  cut.outer_refinement.assign(cut.complex->size(), Cutting::npos);
  for (std::size_t c = 0; c < cut.complex->size(); ++c) {
    cut.outer_piece[c] = cut.pieces.size();
    cut.pieces.push_back({c, std::nullopt, 0, std::move(sub.sets[c])});
  }
}

// A rational point of an open cell with abscissa in the window, read off its
// shape. nullopt when the shape offers none; `outside` when the cell misses
// the window.
struct Witness {
  bool outside = false;
  std::optional<std::pair<Rat, Rat>> point;
};

// Midpoint when both ends are rational, else any rational strictly inside.
Rat between(const Ext& lo, const Ext& hi) {
  if (lo.is_finite() && hi.is_finite() && lo.value().is_rational() && hi.value().is_rational()) {
    Rat mid = lo.value().a() + hi.value().a();
    mid /= 2;
    return mid;
  }
  return rational_between(lo, hi);
}

Witness cell_witness(const Cell& cell, const Window& w) {
  return std::visit(
      [&](const auto& shape) -> Witness {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, TwoDimCell> || std::is_same_v<T, ArcCell>) {
          const Ext a = std::max(shape.left, w.lo);
          const Ext b = std::min(shape.right, w.hi);
          if (!(a < b)) return {true, std::nullopt};
          const Rat x2 = between(a, b);
          if constexpr (std::is_same_v<T, ArcCell>) {
            return {false, std::pair{Rat(shape.carrier.poly()(x2)), x2}};
          } else {
            const Ext lo = shape.bottom ? Ext(shape.bottom->poly()(x2)) : Ext::neg_inf();
            const Ext hi = shape.top ? Ext(shape.top->poly()(x2)) : Ext::pos_inf();
            if (!(lo < hi)) return {};
            return {false, std::pair{between(lo, hi), x2}};
          }
        } else if constexpr (std::is_same_v<T, VerticalCell>) {
          if (!shape.at.is_rational()) return {};
          return {false, std::pair{between(shape.lower, shape.upper), shape.at.a()}};
        } else {
          if (!shape.p.x1.is_rational() || !shape.p.x2.is_rational()) return {};
          return {false, std::pair{shape.p.x1.a(), shape.p.x2.a()}};
        }
      },
      cell.shape);
}

// Some x in (lo, hi) has f(x) > 0 for every f.
bool positive_somewhere(const Ext& lo, const Ext& hi, std::initializer_list<const QuadPoly*> fs) {
  if (!(lo < hi)) return false;
  std::vector<QuadExt> cuts;
  for (const QuadPoly* f : fs) {
    if (f->degree() < 0) return false;
    for (QuadExt& x : f->roots().roots) {
      if (lo < Ext(x) && Ext(x) < hi) cuts.push_back(std::move(x));
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const QuadExt& a, const QuadExt& b) { return a < b; });
  Ext a = lo;
  for (std::size_t k = 0; k <= cuts.size(); ++k) {
    const Ext b = k < cuts.size() ? Ext(cuts[k]) : hi;
    if (a < b) {
      const Rat x = between(a, b);
      bool all = true;
      for (const QuadPoly* f : fs) all = all && sgn((*f)(x)) > 0;
      if (all) return true;
    }
    a = b;
  }
  return false;
}

// Whether the cell meets the open two-dimensional cell d.
bool meets_twodim(const TwoDimCell& d, const Cell& cell) {
  static const QuadPoly one{Rat(1), Rat(0), Rat(0)};
  return std::visit(
      [&](const auto& shape) -> bool {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, TwoDimCell>) {
          const Ext lo = std::max(d.left, shape.left);
          const Ext hi = std::min(d.right, shape.right);
          // Each cell is nonempty over its own range, so only the cross
          // conditions remain.
          const QuadPoly f = d.bottom && shape.top ? shape.top->poly() - d.bottom->poly() : one;
          const QuadPoly g = d.top && shape.bottom ? d.top->poly() - shape.bottom->poly() : one;
          return positive_somewhere(lo, hi, {&f, &g});
        } else if constexpr (std::is_same_v<T, ArcCell>) {
          const Ext lo = std::max(d.left, shape.left);
          const Ext hi = std::min(d.right, shape.right);
          const QuadPoly f = d.bottom ? shape.carrier.poly() - d.bottom->poly() : one;
          const QuadPoly g = d.top ? d.top->poly() - shape.carrier.poly() : one;
          return positive_somewhere(lo, hi, {&f, &g});
        } else if constexpr (std::is_same_v<T, VerticalCell>) {
          const Ext at(shape.at);
          if (!(d.left < at && at < d.right)) return false;
          const Ext lo = d.bottom ? std::max(shape.lower, Ext(d.bottom->poly()(shape.at))) : shape.lower;
          const Ext hi = d.top ? std::min(shape.upper, Ext(d.top->poly()(shape.at))) : shape.upper;
          return lo < hi;
        } else {
          const Ext x2(shape.p.x2);
          if (!(d.left < x2 && x2 < d.right)) return false;
          if (d.bottom && !(d.bottom->poly()(shape.p.x2) < shape.p.x1)) return false;
          if (d.top && !(shape.p.x1 < d.top->poly()(shape.p.x2))) return false;
          return true;
        }
      },
      cell.shape);
}

bool inside_twodim(const TwoDimCell& c, const Rat& x1, const Rat& x2) {
  const Ext e2{QuadExt(x2)};
  if (!(c.left < e2 && e2 < c.right)) return false;
  if (c.bottom && !(c.bottom->poly()(x2) < x1)) return false;
  if (c.top && !(x1 < c.top->poly()(x2))) return false;
  return true;
}

// Pieces Δ' ∩ Δ for the cells Δ' of the refinement complex.
void pair_cells(Cutting& cut, std::size_t outer, Refinement& ref, const std::vector<std::vector<std::size_t>>& sets,
                const std::vector<QuadPoly>& subset_polys) {
  const Cell& delta = cut.complex->cells()[outer];
  const Region outer_region = delta.region();
  const Window window = window_of(delta);
  const CellComplex& inner = *ref.complex;
  ref.inner_piece.assign(inner.size(), Cutting::npos);

  // Cells that may meet the boundary of Δ get an exact intersection test; all
  // others lie inside Δ or away from its closure.
  std::vector<std::size_t> boundary;
  bool interior_possible = false;
  auto add = [&](const std::vector<std::size_t>& ids) { boundary.insert(boundary.end(), ids.begin(), ids.end()); };
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, TwoDimCell>) {
          interior_possible = true;
          if (shape.bottom) add(inner.zone(shape.bottom->poly()));
          if (shape.top) add(inner.zone(shape.top->poly()));
          if (shape.left.is_finite()) add(inner.cells_meeting_vertical(shape.left.value()));
          if (shape.right.is_finite()) add(inner.cells_meeting_vertical(shape.right.value()));
        } else if constexpr (std::is_same_v<T, ArcCell>) {
          add(inner.zone(shape.carrier.poly()));
        } else if constexpr (std::is_same_v<T, VerticalCell>) {
          add(inner.cells_meeting_vertical(shape.at));
        } else {
          // A point is crossed by nothing and is never refined.
          for (std::size_t i = 0; i < inner.size(); ++i) boundary.push_back(i);
        }
      },
      delta.shape);
  std::sort(boundary.begin(), boundary.end());
  boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());

  auto emit = [&](std::size_t i, std::vector<std::size_t> crossing) {
    for (std::size_t& j : crossing) j = ref.subset[j];
    ref.inner_piece[i] = cut.pieces.size();
    cut.pieces.push_back({outer, cut.refinements.size(), i, std::move(crossing)});
  };
  const auto* outer_twodim = std::get_if<TwoDimCell>(&delta.shape);
  auto exact = [&](std::size_t i) {
    if (outer_twodim && sets[i].empty()) {
      // Nothing left to recount, so only emptiness matters.
      if (meets_twodim(*outer_twodim, inner.cells()[i])) emit(i, {});
      return;
    }
    Region both = intersect(outer_region, inner.cells()[i].region());
    if (is_empty(both)) return;
    std::vector<std::size_t> crossing;
    for (std::size_t j : sets[i]) {
      if (crosses(subset_polys[j], both)) crossing.push_back(j);
    }
    emit(i, std::move(crossing));
  };

  std::size_t next = 0;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (next < boundary.size() && boundary[next] == i) {
      ++next;
      exact(i);
      continue;
    }
    if (!interior_possible) continue;
    const Witness w = cell_witness(inner.cells()[i], window);
    if (w.outside) continue;
    if (!w.point) {
      exact(i);
    } else if (inside_twodim(std::get<TwoDimCell>(delta.shape), w.point->first, w.point->second)) {
      emit(i, sets[i]);
    }
  }
}

}  // namespace

std::size_t Cutting::max_crossing() const {
  std::size_t m = 0;
  for (const Piece& p : pieces) m = std::max(m, p.crossing.size());
  return m;
}

bool Cutting::within_budget() const {
  for (const Piece& p : pieces) {
    if (!under(p.crossing.size(), r, H.size())) return false;
  }
  return true;
}

Region Cutting::piece_region(const Piece& piece) const {
  Region outer = complex->cells()[piece.outer].region();
  if (!piece.refinement) return outer;
  return intersect(outer, refinements[*piece.refinement].complex->cells()[piece.inner].region());
}

std::vector<std::size_t> Cutting::locate(const Rat& x1, const Rat& x2) const {
  std::vector<std::size_t> out;
  for (std::size_t o : complex->locate(x1, x2)) {
    if (outer_piece[o] != npos) {
      out.push_back(outer_piece[o]);
      continue;
    }
    const Refinement& ref = refinements[outer_refinement[o]];
    for (std::size_t i : ref.complex->locate(x1, x2)) {
      if (ref.inner_piece[i] != npos) out.push_back(ref.inner_piece[i]);
    }
  }
  if (out.empty()) {
    throw Error(ErrorKind::CoverageGap, "no piece contains (" + format_rat(x1) + ", " + format_rat(x2) + ")");
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cutting suboptimal_cutting(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r,
                           const SampleConfig& cfg, const Calibration& cal) {
  Cutting cut;
  cut.family = family;
  cut.H = family.normalize(std::move(H));
  cut.r = r;
  check_r(r, cut.H.size());
  const auto polys = polys_of(family, cut.H);
  fill_direct(cut, suboptimal_core(family, cut.H, polys, r, cfg, cal, cut.trail, "sub"));
  return cut;
}

double level1_budget(const Calibration& cal, double r) {
  const double d = cal.d;
  double tail = 0;
  for (int i = 0; i < 16; ++i) tail += std::pow(2.0, 2 * d * (i + 1)) * std::pow(2.0, -std::pow(2.0, i));
  return 3 * cal.C * std::pow(r + d, d) * (1 + cal.C * tail);
}

Cutting optimal_cutting(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r, const SampleConfig& cfg,
                        const Calibration& cal) {
  Cutting cut;
  cut.family = family;
  cut.H = family.normalize(std::move(H));
  cut.r = r;
  const std::size_t n = cut.H.size();
  check_r(r, n);
  const Rat nr(static_cast<unsigned long>(n));
  const auto polys = polys_of(family, cut.H);

  if (r * 2 > nr) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    Sub sub{build_subset(family, cut.H, all), {}};
    sub.sets.assign(sub.complex->size(), {});
    cut.trail.push_back({"direct", cfg.seed, 0, n, sub.complex->size(), true});
    fill_direct(cut, std::move(sub));
    return cut;
  }
  if (nr >= r * (nr - 1)) {
    // n/r >= n - 1: the decomposition of any single curve is a cutting.
    Sub sub{build_subset(family, cut.H, {0}), {}};
    sub.sets = sub.complex->crossing_sets(polys);
    cut.trail.push_back({"single", cfg.seed, 0, 1, sub.complex->size(), true});
    fill_direct(cut, std::move(sub));
    return cut;
  }

  const double rd = r.get_d();
  const double budget = level1_budget(cal, rd);
  Sub level1;
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt == cfg.max_retries) {
      throw Error(ErrorKind::RetryBudgetExhausted,
                  "no level-1 sample met the size budget: " + format_trail(cut.trail));
    }
    SampleConfig sc{rd / static_cast<double>(n), derive_seed(cfg.seed, attempt), cfg.max_retries};
    std::vector<std::size_t> idx = bernoulli_sample(n, sc);
    auto complex = build_subset(family, cut.H, idx);
    auto sets = complex->crossing_sets(polys);
    double functional = 0;
    for (const auto& s : sets) {
      const double t = static_cast<double>(s.size()) * rd / static_cast<double>(n);
      functional += t <= 1 ? 1.0 : cal.C * std::pow(t, cal.d) * std::pow(std::log2(t + 1), cal.d);
    }
    const bool ok = functional <= budget;
    cut.trail.push_back({"level1", sc.seed, attempt, idx.size(), complex->size(), ok});
    if (ok) {
      level1 = {std::move(complex), std::move(sets)};
      break;
    }
  }

  cut.complex = level1.complex;
  const std::size_t cells = cut.complex->size();
  cut.outer_piece.assign(cells, Cutting::npos);
  cut.outer_refinement.assign(cells, Cutting::npos);
  for (std::size_t c = 0; c < cells; ++c) {
    std::vector<std::size_t>& set = level1.sets[c];
    if (under(set.size(), r, n)) {
      cut.outer_piece[c] = cut.pieces.size();
      cut.pieces.push_back({c, std::nullopt, 0, std::move(set)});
      continue;
    }
    Refinement ref;
    ref.outer = c;
    ref.t = Rat(static_cast<unsigned long>(set.size())) * r / nr;
    ref.subset = set;
    std::vector<CurveParam> subset_params;
    std::vector<QuadPoly> subset_polys;
    for (std::size_t j : set) {
      subset_params.push_back(cut.H[j]);
      subset_polys.push_back(polys[j]);
    }
    SampleConfig sc{0, derive_seed(cfg.seed ^ 0xC0FFEE0000000000ULL, c), cfg.max_retries};
    Sub sub = suboptimal_core(family, subset_params, subset_polys, ref.t, sc, cal, cut.trail, "sub",
                              window_of(cut.complex->cells()[c]));
    ref.complex = sub.complex;
    pair_cells(cut, c, ref, sub.sets, subset_polys);
    cut.outer_refinement[c] = cut.refinements.size();
    cut.refinements.push_back(std::move(ref));
  }
  return cut;
}

bool verify_cutting_exact(const Cutting& cutting, std::size_t max_pieces) {
  const auto polys = polys_of(cutting.family, cutting.H);
  const std::size_t total = cutting.pieces.size();
  const std::size_t stride = max_pieces >= total ? 1 : (total + max_pieces - 1) / max_pieces;
  // A curve that does not cross a level-1 cell does not cross any subset of
  // it, so pieces only need testing against their outer cell's crossers.
  // Those are recomputed here against all of H, not taken from the cutting.
  std::vector<std::optional<std::vector<std::size_t>>> outer_crossers(cutting.complex->size());
  for (std::size_t k = 0; k < total; k += stride) {
    const Piece& piece = cutting.pieces[k];
    auto& candidates = outer_crossers[piece.outer];
    if (!candidates) {
      const Region outer = cutting.complex->cells()[piece.outer].region();
      candidates.emplace();
      for (std::size_t j = 0; j < polys.size(); ++j) {
        if (crosses(polys[j], outer)) candidates->push_back(j);
      }
    }
    std::vector<std::size_t> crossing;
    if (piece.refinement) {
      const Region region = cutting.piece_region(piece);
      for (std::size_t j : *candidates) {
        if (crosses(polys[j], region)) crossing.push_back(j);
      }
    } else {
      crossing = *candidates;
    }
    std::vector<std::size_t> claimed = piece.crossing;
    std::sort(claimed.begin(), claimed.end());
    if (crossing != claimed) return false;
    if (!under(crossing.size(), cutting.r, cutting.H.size())) return false;
  }
  return true;
}

std::size_t worker_threads() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CUTTING_FORGE_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) return std::min<std::size_t>(v, 256);
  }
  return hw;
}

std::vector<TailPoint> tail_estimate(const CurveFamily& family, std::vector<CurveParam> H, const Rat& r,
                                     std::span<const Rat> t_values, std::size_t trials, std::uint64_t seed) {
  H = family.normalize(std::move(H));
  const std::size_t n = H.size();
  const Rat nr(static_cast<unsigned long>(n));
  if (!(r >= 1) || !(r * 2 <= nr)) {
    throw Error(ErrorKind::PreconditionViolated, "tail estimate needs 1 <= r <= n/2");
  }
  const auto polys = polys_of(family, H);
  std::vector<std::vector<std::size_t>> counts(trials, std::vector<std::size_t>(t_values.size(), 0));

  auto run_trial = [&](std::size_t trial) {
    SampleConfig sc{r.get_d() / static_cast<double>(n), derive_seed(seed, trial), 1};
    std::vector<CurveParam> sample = bernoulli_sample(H, sc);
    CellComplex complex(family, std::move(sample));
    const auto sets = complex.crossing_sets(polys);
    for (std::size_t k = 0; k < t_values.size(); ++k) {
      const Rat threshold = t_values[k] * nr;
      std::size_t c = 0;
      for (const auto& s : sets) {
        if (Rat(static_cast<unsigned long>(s.size())) * r >= threshold) ++c;
      }
      counts[trial][k] = c;
    }
  };

  const std::size_t workers = std::min(worker_threads(), std::max<std::size_t>(trials, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < trials; ++i) run_trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < trials; i = next++) run_trial(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<TailPoint> out;
  for (std::size_t k = 0; k < t_values.size(); ++k) {
    double sum = 0;
    double sq = 0;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto v = static_cast<double>(counts[i][k]);
      sum += v;
      sq += v * v;
    }
    const double tn = static_cast<double>(trials);
    const double mean = trials ? sum / tn : 0;
    const double var = trials > 1 ? std::max(0.0, (sq - tn * mean * mean) / (tn - 1)) : 0;
    out.push_back({t_values[k], mean, trials ? std::sqrt(var / tn) : 0});
  }
  return out;
}

MomentResult moment_check(std::size_t n, const Rat& p, unsigned d) {
  if (d < 1 || p < 0 || p > 1) throw Error(ErrorKind::PreconditionViolated, "moment check needs d >= 1, 0 <= p <= 1");
  std::vector<Rat> dist(n + 1, Rat(0));
  dist[0] = 1;
  const Rat q = 1 - p;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = i; k >= 1; --k) dist[k] = dist[k] * q + dist[k - 1] * p;
    dist[0] *= q;
  }
  MomentResult out;
  out.exact = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    Rat power = 1;
    for (unsigned e = 0; e < d; ++e) power *= static_cast<unsigned long>(k);
    out.exact += dist[k] * power;
  }
  Rat base = Rat(static_cast<unsigned long>(n)) * p + d;
  out.bound = 1;
  for (unsigned e = 0; e < d; ++e) out.bound *= base;
  out.exact.canonicalize();
  out.bound.canonicalize();
  out.holds = out.exact <= out.bound;
  return out;
}

}  // namespace cutting_forge
