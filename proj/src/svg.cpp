#include "mixlink/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "mixlink/error.hpp"

namespace mixlink {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 30.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double xmin, xmax, ymin, ymax;

  double scale() const {
    const double span = std::max(xmax - xmin, ymax - ymin);
    return span > 0.0 ? (kCanvas - 2.0 * kMargin) / span : 1.0;
  }
  // SVG y grows downwards.
  double sx(double x) const { return kMargin + (x - xmin) * scale(); }
  double sy(double y) const { return kCanvas - kMargin - (y - ymin) * scale(); }
};

Frame frame_of(const std::vector<std::pair<double, double>>& pts) {
  Frame f{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& [x, y] : pts) {
    f.xmin = std::min(f.xmin, x);
    f.xmax = std::max(f.xmax, x);
    f.ymin = std::min(f.ymin, y);
    f.ymax = std::max(f.ymax, y);
  }
  return f;
}

std::string header() {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kCanvas) +
         "\" height=\"" + num(kCanvas) + "\" viewBox=\"0 0 " + num(kCanvas) + " " + num(kCanvas) +
         "\">\n";
}

std::string closed_path(const std::vector<std::pair<double, double>>& pts, const Frame& fr,
                        const std::string& style) {
  std::string d;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    d += (k == 0 ? "M" : " L") + num(fr.sx(pts[k].first)) + " " + num(fr.sy(pts[k].second));
  }
  d += " Z";
  return "  <path d=\"" + d + "\" " + style + "/>\n";
}

std::string marker(double x, double y, const std::string& label) {
  return "  <circle cx=\"" + num(x) + "\" cy=\"" + num(y) +
         "\" r=\"4\" fill=\"crimson\"/>\n  <text x=\"" + num(x + 6) + "\" y=\"" + num(y - 6) +
         "\" font-size=\"12\">" + label + "</text>\n";
}

}  // namespace

std::string emit_svg(const SigmaCurve& curve) {
  if (curve.samples.empty()) throw Error(ErrorCode::EmptyData, "sigma curve has no samples");
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : curve.samples) pts.emplace_back(s.t.real(), s.t.imag());
  pts.emplace_back(1.0, 0.0);
  pts.emplace_back(-3.0, 0.0);
  const Frame fr = frame_of(pts);
  pts.resize(pts.size() - 2);

  std::string out = header();
  out += "  <g id=\"sigma\">\n";
  out += closed_path(pts, fr, "fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"");
  out += "  </g>\n";
  out += marker(fr.sx(1.0), fr.sy(0.0), "cusp t=1");
  out += marker(fr.sx(-3.0), fr.sy(0.0), "t=-3");
  out += "</svg>\n";
  return out;
}

std::string emit_svg(const std::vector<SignedPolyline>& components) {
  if (components.empty()) throw Error(ErrorCode::EmptyData, "no link components to draw");
  std::vector<std::pair<double, double>> all;
  for (const auto& c : components) {
    if (c.line.points.size() < 2) throw Error(ErrorCode::EmptyData, "component with fewer than 2 points");
    for (const auto& p : c.line.points) all.emplace_back(p[0], p[1]);
  }
  const Frame fr = frame_of(all);

  std::string out = header();
  out += "  <defs>\n    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" "
         "markerWidth=\"8\" markerHeight=\"8\" orient=\"auto\">\n"
         "      <path d=\"M0 0 L10 5 L0 10 Z\" fill=\"black\"/>\n    </marker>\n  </defs>\n";
  static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : c.line.points) pts.emplace_back(p[0], p[1]);
    const std::string color = colors[i % 6];
    std::string style = "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"";
    if (c.sign < 0) style += " stroke-dasharray=\"6 4\"";
    out += "  <g id=\"component-" + std::to_string(i) + "\" class=\"" +
           (c.sign < 0 ? "negative" : "positive") + "\">\n";
    out += closed_path(pts, fr, style);
    // Short segment carrying the arrowhead, in the direction of travel.
    const std::size_t k = pts.size() / 4;
    const auto& a = pts[k];
    const auto& b = pts[(k + 1) % pts.size()];
    out += "  <line x1=\"" + num(fr.sx(a.first)) + "\" y1=\"" + num(fr.sy(a.second)) + "\" x2=\"" +
           num(fr.sx(b.first)) + "\" y2=\"" + num(fr.sy(b.second)) + "\" stroke=\"" + color +
           "\" marker-end=\"url(#arrow)\"/>\n";
    out += "  </g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mixlink
