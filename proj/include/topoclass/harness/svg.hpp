#pragma once

// Minimal standalone SVG renderings: diagram scatter, silhouette curves,
// accuracy-vs-dimension sweeps.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "topoclass/harness/evaluate.hpp"
#include "topoclass/persistence.hpp"
#include "topoclass/summaries.hpp"

namespace topoclass {

namespace svg {

constexpr double kWidth = 640, kHeight = 480, kMargin = 60;
inline const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

/// Maps data coordinates into the plotting rectangle.
struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kWidth - 2 * kMargin); }
  double py(double y) const { return kHeight - kMargin - (y - y0) / (y1 - y0) * (kHeight - 2 * kMargin); }
};

inline std::string header() {
  std::ostringstream o;
  o << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kWidth << R"(" height=")" << kHeight << R"(" viewBox="0 0 )"
    << kWidth << ' ' << kHeight << R"(" font-family="sans-serif" font-size="12">)" << '\n'
    << R"(<rect width="100%" height="100%" fill="white"/>)" << '\n';
  return o.str();
}

inline std::string axes(const Frame& f, const std::string& xlabel, const std::string& ylabel, const std::string& cls = "axis") {
  std::ostringstream o;
  o << "<g class=\"" << cls << "\" stroke=\"black\">"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
    << kHeight - kMargin << "\"/>"
    << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\"" << kHeight - kMargin
    << "\"/></g>\n";
  o << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  o << "<text x=\"15\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 15 " << kHeight / 2
    << ")\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  o << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\" text-anchor=\"middle\">" << f.x0 << "</text>"
    << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 15 << "\" text-anchor=\"middle\">" << f.x1
    << "</text>\n";
  o << "<text x=\"" << kMargin - 5 << "\" y=\"" << kHeight - kMargin << "\" text-anchor=\"end\">" << f.y0 << "</text>"
    << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin << "\" text-anchor=\"end\">" << f.y1 << "</text>\n";
  return o.str();
}

inline std::string polyline(const Frame& f, const std::vector<std::pair<double, double>>& pts, const std::string& color,
                            const std::string& extra = "") {
  std::ostringstream o;
  o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" " << extra << " points=\"";
  for (const auto& [x, y] : pts) o << f.px(x) << ',' << f.py(y) << ' ';
  o << "\"/>\n";
  return o.str();
}

inline void write(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << body;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace svg

/// Finite pairs as a scatter above the diagonal y = x.
inline std::string render_diagram_svg(const PersistenceDiagram& d) {
  double hi = 1.0;
  for (const auto& p : d.pairs) hi = std::max(hi, p.death);
  hi *= 1.05;
  const svg::Frame f{0.0, hi, 0.0, hi};
  std::ostringstream o;
  o << svg::header() << svg::axes(f, "birth", "death");
  o << "<line class=\"diagonal\" stroke=\"gray\" stroke-dasharray=\"4 4\" x1=\"" << f.px(0) << "\" y1=\"" << f.py(0)
    << "\" x2=\"" << f.px(hi) << "\" y2=\"" << f.py(hi) << "\"/>\n";
  for (const auto& p : d.pairs)
    o << "<circle cx=\"" << f.px(p.birth) << "\" cy=\"" << f.py(p.death) << "\" r=\"3\" fill=\"" << svg::kPalette[0]
      << "\"/>\n";
  o << "<text x=\"" << svg::kMargin << "\" y=\"30\">H" << d.dim << " diagram</text>\n</svg>\n";
  return o.str();
}

/// One polyline per named summary, with a legend.
inline std::string render_silhouettes_svg(const std::vector<std::pair<std::string, SummaryVector>>& curves) {
  if (curves.empty()) throw std::invalid_argument("render_silhouettes_svg: nothing to draw");
  const Grid& g = curves.front().second.grid;
  double top = 0.0;
  for (const auto& [_, s] : curves)
    for (double v : s.values) top = std::max(top, v);
  const svg::Frame f{g.t_min, g.t_max, 0.0, top > 0 ? top * 1.05 : 1.0};
  std::ostringstream o;
  o << svg::header() << svg::axes(f, "t", "silhouette");
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& s = curves[c].second;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < s.values.size(); ++i) pts.emplace_back(s.grid.sample(i), s.values[i]);
    const char* color = svg::kPalette[c % std::size(svg::kPalette)];
    o << svg::polyline(f, pts, color, "class=\"curve\"");
    o << "<g class=\"legend\"><rect x=\"" << svg::kWidth - 150 << "\" y=\"" << 20 + 18 * c
      << "\" width=\"12\" height=\"12\" fill=\"" << color << "\"/><text x=\"" << svg::kWidth - 132 << "\" y=\""
      << 31 + 18 * c << "\">" << curves[c].first << "</text></g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

/// Accuracy (left axis) and cumulative explained variance (right axis)
/// against dimension. Both quantities live in [0, 1].
inline std::string render_sweep_svg(const SweepReport& s) {
  if (s.dims.empty()) throw std::invalid_argument("render_sweep_svg: empty sweep");
  const double lo = static_cast<double>(*std::min_element(s.dims.begin(), s.dims.end()));
  const double hi = static_cast<double>(*std::max_element(s.dims.begin(), s.dims.end()));
  const svg::Frame f{lo, hi > lo ? hi : lo + 1, 0.0, 1.0};
  std::ostringstream o;
  o << svg::header() << svg::axes(f, "dimension", "accuracy", "axis axis-left");
  o << "<g class=\"axis axis-right\" stroke=\"" << svg::kPalette[0] << "\"><line x1=\"" << svg::kWidth - svg::kMargin
    << "\" y1=\"" << svg::kMargin << "\" x2=\"" << svg::kWidth - svg::kMargin << "\" y2=\"" << svg::kHeight - svg::kMargin
    << "\"/></g>\n<text x=\"" << svg::kWidth - 15 << "\" y=\"" << svg::kHeight / 2 << "\" transform=\"rotate(90 "
    << svg::kWidth - 15 << ' ' << svg::kHeight / 2 << ")\" text-anchor=\"middle\" fill=\"" << svg::kPalette[0]
    << "\">explained variance</text>\n";
  std::vector<std::pair<double, double>> acc;
  for (std::size_t i = 0; i < s.dims.size(); ++i) acc.emplace_back(static_cast<double>(s.dims[i]), s.mean[i]);
  o << svg::polyline(f, acc, svg::kPalette[1], "class=\"accuracy\"");
  for (std::size_t i = 0; i < s.dims.size(); ++i)
    o << "<line class=\"errorbar\" stroke=\"" << svg::kPalette[1] << "\" x1=\"" << f.px(acc[i].first) << "\" x2=\""
      << f.px(acc[i].first) << "\" y1=\"" << f.py(std::max(0.0, s.mean[i] - s.std[i])) << "\" y2=\""
      << f.py(std::min(1.0, s.mean[i] + s.std[i])) << "\"/>\n";
  if (!s.cumulative_variance.empty()) {
    std::vector<std::pair<double, double>> var;
    for (std::size_t i = 0; i < s.dims.size(); ++i)
      var.emplace_back(static_cast<double>(s.dims[i]), s.cumulative_variance[i]);
    o << svg::polyline(f, var, svg::kPalette[0], "class=\"variance\"");
  }
  o << svg::polyline(f, {{f.x0, s.chance}, {f.x1, s.chance}}, svg::kPalette[1],
                     "class=\"chance\" stroke-dasharray=\"4 4\"");
  o << "</svg>\n";
  return o.str();
}

inline void plot_svg(const PersistenceDiagram& d, const std::string& path) { svg::write(path, render_diagram_svg(d)); }
inline void plot_svg(const std::vector<std::pair<std::string, SummaryVector>>& curves, const std::string& path) {
  svg::write(path, render_silhouettes_svg(curves));
}
inline void plot_svg(const SweepReport& s, const std::string& path) { svg::write(path, render_sweep_svg(s)); }

}  // namespace topoclass
