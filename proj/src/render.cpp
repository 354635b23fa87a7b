#include "cutting_forge/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "cutting_forge/error.hpp"

namespace cutting_forge {

namespace {

constexpr int kSamples = 48;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

class Canvas {
 public:
  explicit Canvas(const RenderOptions& o) : o_(o), v_(o.viewport) {}

  double sx(double x2) const { return (x2 - v_.x2min) / (v_.x2max - v_.x2min) * o_.width; }
  double sy(double x1) const { return (v_.x1max - x1) / (v_.x1max - v_.x1min) * o_.height; }
  std::string pt(double x2, double x1) const { return num(sx(x2)) + "," + num(sy(x1)); }

  // Clamped so that unbounded pieces stay finite slightly outside the frame.
  double clamp_x1(double x1) const {
    const double pad = (v_.x1max - v_.x1min) * 0.05;
    return std::clamp(x1, v_.x1min - pad, v_.x1max + pad);
  }

  double lo(const Ext& e, double fallback) const { return e.is_finite() ? e.value().approx() : fallback; }

  void open(std::ostringstream& os) const {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << o_.width << "\" height=\"" << o_.height
       << "\" viewBox=\"0 0 " << o_.width << ' ' << o_.height << "\">\n";
    os << "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"" << o_.width << "\" height=\"" << o_.height
       << "\"/></clipPath></defs>\n";
    os << "<rect class=\"frame\" x=\"0\" y=\"0\" width=\"" << o_.width << "\" height=\"" << o_.height
       << "\" fill=\"white\" stroke=\"black\"/>\n";
    os << "<g clip-path=\"url(#frame)\">\n";
  }

  static void close(std::ostringstream& os) { os << "</g>\n</svg>\n"; }

  void curve(std::ostringstream& os, const QuadPoly& h, const char* cls, const char* stroke) const {
    os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << stroke << "\" points=\"";
    const int steps = sgn(h.c2) == 0 ? 1 : kSamples;
    for (int i = 0; i <= steps; ++i) {
      const double x2 = v_.x2min + (v_.x2max - v_.x2min) * i / steps;
      if (i) os << ' ';
      os << pt(x2, clamp_x1(eval(h, x2)));
    }
    os << "\"/>\n";
  }

  void wall(std::ostringstream& os, const VerticalCell& w) const {
    const double at = w.at.approx();
    if (at < v_.x2min || at > v_.x2max) return;
    const double a = clamp_x1(lo(w.lower, -INFINITY));
    const double b = clamp_x1(lo(w.upper, INFINITY));
    os << "<line class=\"wall\" stroke=\"gray\" stroke-dasharray=\"4 3\" x1=\"" << num(sx(at)) << "\" y1=\""
       << num(sy(a)) << "\" x2=\"" << num(sx(at)) << "\" y2=\"" << num(sy(b)) << "\"/>\n";
  }

  // Outline of a region, or nothing when it misses the viewport.
  std::string outline(const Region& region) const {
    std::ostringstream os;
    if (const auto* s = std::get_if<Slice>(&region)) {
      const double at = s->at.approx();
      if (at < v_.x2min || at > v_.x2max) return {};
      if (s->is_point) {
        const double x1 = s->point.approx();
        if (x1 < v_.x1min || x1 > v_.x1max) return {};
        os << "<circle cx=\"" << num(sx(at)) << "\" cy=\"" << num(sy(x1)) << "\" r=\"2\"/>";
      } else {
        const double a = clamp_x1(lo(s->lower, -INFINITY));
        const double b = clamp_x1(lo(s->upper, INFINITY));
        if (b < v_.x1min || a > v_.x1max) return {};
        os << "<line x1=\"" << num(sx(at)) << "\" y1=\"" << num(sy(a)) << "\" x2=\"" << num(sx(at)) << "\" y2=\""
           << num(sy(b)) << "\"/>";
      }
      return os.str();
    }
    const auto* band = std::get_if<Band>(&region);
    if (!band) return {};
    const double left = std::max(v_.x2min, lo(band->left, -INFINITY));
    const double right = std::min(v_.x2max, lo(band->right, INFINITY));
    if (!(left < right)) return {};
    std::vector<double> xs(kSamples + 1), top(kSamples + 1), bottom(kSamples + 1);
    bool visible = false;
    for (int i = 0; i <= kSamples; ++i) {
      const double x2 = left + (right - left) * i / kSamples;
      double t = INFINITY, b = -INFINITY;
      for (const auto& c : band->carriers) t = b = eval(c, x2);
      for (const auto& u : band->upper) t = std::min(t, eval(u, x2));
      for (const auto& l : band->lower) b = std::max(b, eval(l, x2));
      xs[i] = x2;
      top[i] = clamp_x1(t);
      bottom[i] = clamp_x1(b);
      if (top[i] >= bottom[i] && top[i] >= v_.x1min && bottom[i] <= v_.x1max) visible = true;
    }
    if (!visible) return {};
    if (!band->carriers.empty()) {
      os << "<polyline fill=\"none\" points=\"";
      for (int i = 0; i <= kSamples; ++i) os << (i ? " " : "") << pt(xs[i], top[i]);
      os << "\"/>";
      return os.str();
    }
    os << "<polygon points=\"";
    for (int i = 0; i <= kSamples; ++i) os << (i ? " " : "") << pt(xs[i], bottom[i]);
    for (int i = kSamples; i >= 0; --i) os << ' ' << pt(xs[i], std::max(top[i], bottom[i]));
    os << "\"/>";
    return os.str();
  }

 private:
  static double eval(const QuadPoly& h, double x2) {
    return (h.c2.get_d() * x2 + h.c1.get_d()) * x2 + h.c0.get_d();
  }

  const RenderOptions& o_;
  const Viewport& v_;
};

void check(const RenderOptions& o) {
  const auto& v = o.viewport;
  if (!(std::isfinite(v.x2min) && std::isfinite(v.x2max) && std::isfinite(v.x1min) && std::isfinite(v.x1max)) ||
      !(v.x2min < v.x2max && v.x1min < v.x1max))
    throw Error(ErrorKind::PreconditionViolated, "viewport must be finite with min < max");
  if (o.width <= 0 || o.height <= 0) throw Error(ErrorKind::PreconditionViolated, "canvas size must be positive");
}

}  // namespace

Viewport parse_viewport(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    const std::string item(text.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad viewport component '" + item + "'");
    }
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (parts.size() != 4) throw Error(ErrorKind::ParseError, "viewport is x2min:x2max:x1min:x1max");
  Viewport v{parts[0], parts[1], parts[2], parts[3]};
  RenderOptions o;
  o.viewport = v;
  check(o);
  return v;
}

std::string render_svg(const CellComplex& complex, const RenderOptions& options) {
  check(options);
  const Canvas canvas(options);
  std::ostringstream os;
  canvas.open(os);
  if (options.shade_cells) {
    std::size_t k = 0;
    for (const auto& cell : complex.cells()) {
      if (cell.kind() != CellKind::TwoDim) continue;
      const auto o = canvas.outline(cell.region());
      if (o.empty()) continue;
      static constexpr const char* fills[] = {"#e8eef7", "#f7efe2", "#e6f2e6", "#f3e6f0"};
      os << "<g class=\"cell\" fill=\"" << fills[k++ % 4] << "\" stroke=\"none\">" << o << "</g>\n";
    }
  }
  for (const auto& h : complex.curves()) canvas.curve(os, h, "curve", "black");
  for (const auto& cell : complex.cells())
    if (cell.kind() == CellKind::VerticalExtra) canvas.wall(os, std::get<VerticalCell>(cell.shape));
  Canvas::close(os);
  return os.str();
}

std::string render_svg(const Cutting& cutting, const RenderOptions& options) {
  check(options);
  const Canvas canvas(options);
  std::ostringstream os;
  canvas.open(os);
  for (std::size_t i = 0; i < cutting.pieces.size(); ++i) {
    const auto& piece = cutting.pieces[i];
    const auto o = canvas.outline(cutting.piece_region(piece));
    if (o.empty()) continue;
    os << "<g class=\"piece\" fill=\"none\" stroke=\"steelblue\"><title>piece " << i << ": crossed by "
       << piece.crossing.size() << "</title>" << o << "</g>\n";
  }
  for (const auto& s : cutting.H) canvas.curve(os, cutting.family.branch(1, s), "curve", "black");
  Canvas::close(os);
  return os.str();
}

}  // namespace cutting_forge
