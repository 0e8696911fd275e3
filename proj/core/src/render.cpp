#include "folk/render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "xml_util.hpp"

namespace folk {

namespace {

std::string num(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s.find_first_not_of("-0.") == std::string::npos) return "0.000000";
  return s;
}

struct Frame {
  double x0 = 0, y0 = 0, width = 1, height = 1;
  double unit = 1;  // reference length for fonts and strokes
};

Frame frame_for(const Biplot& b) {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  auto grow = [&](const BiplotPoint& p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  };
  for (const auto& p : b.points) grow(p);
  for (const auto& p : b.arrows) grow(p);
  double w = xmax - xmin, h = ymax - ymin;
  const double span = std::max({w, h, 0.0});
  const double fallback = span > 0 ? span : 1.0;
  if (w <= 0) {
    xmin -= fallback / 2;
    w = fallback;
  }
  if (h <= 0) {
    ymin -= fallback / 2;
    h = fallback;
  }
  Frame f;
  f.x0 = xmin - 0.1 * w;
  f.width = 1.2 * w;
  // SVG y points down; data y is negated when drawn.
  f.y0 = -(ymin + h) - 0.1 * h;
  f.height = 1.2 * h;
  f.unit = std::max(f.width, f.height) / 100.0;
  return f;
}

void open_svg(std::ostream& out, const Frame& f) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" << num(f.x0) << ' '
      << num(f.y0) << ' ' << num(f.width) << ' ' << num(f.height)
      << "\" font-family=\"Helvetica, Arial, sans-serif\">\n";
  out << "  <rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.width) << "\" height=\""
      << num(f.height) << "\" fill=\"#ffffff\"/>\n";
  out << "  <g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"" << num(0.2 * f.unit) << "\">\n"
      << "    <line x1=\"" << num(f.x0) << "\" y1=\"0.000000\" x2=\"" << num(f.x0 + f.width) << "\" y2=\"0.000000\"/>\n"
      << "    <line x1=\"0.000000\" y1=\"" << num(f.y0) << "\" x2=\"0.000000\" y2=\"" << num(f.y0 + f.height)
      << "\"/>\n"
      << "  </g>\n";
  out << "  <text x=\"" << num(f.x0 + f.width - f.unit) << "\" y=\"" << num(-f.unit) << "\" font-size=\""
      << num(2.5 * f.unit) << "\" text-anchor=\"end\" fill=\"#666666\">PC1</text>\n";
  out << "  <text x=\"" << num(f.unit) << "\" y=\"" << num(f.y0 + 3 * f.unit) << "\" font-size=\""
      << num(2.5 * f.unit) << "\" fill=\"#666666\">PC2</text>\n";
}

// Letters a matrix never uses load exactly zero; drawing them would stack labels on the origin.
std::vector<BiplotPoint> visible_arrows(const Biplot& b) {
  double longest = 0;
  for (const auto& a : b.arrows) longest = std::max(longest, std::hypot(a.x, a.y));
  std::vector<BiplotPoint> out;
  for (const auto& a : b.arrows) {
    if (longest > 0 && std::hypot(a.x, a.y) > 1e-9 * longest) out.push_back(a);
  }
  return out;
}

void write_arrows(std::ostream& out, const Biplot& b, const Frame& f, std::string_view colour) {
  const std::vector<BiplotPoint> arrows = visible_arrows(b);
  out << "  <g id=\"loadings\" stroke=\"" << colour << "\" stroke-width=\"" << num(0.3 * f.unit) << "\">\n";
  for (const auto& a : arrows) {
    out << "    <line x1=\"0.000000\" y1=\"0.000000\" x2=\"" << num(a.x) << "\" y2=\"" << num(-a.y) << "\"/>\n";
  }
  out << "  </g>\n";
  out << "  <g id=\"loading-labels\" fill=\"" << colour << "\" font-size=\"" << num(2.5 * f.unit)
      << "\" text-anchor=\"middle\">\n";
  for (const auto& a : arrows) {
    out << "    <text x=\"" << num(a.x * 1.06) << "\" y=\"" << num(-a.y * 1.06) << "\">"
        << detail::xml_escape(a.label) << "</text>\n";
  }
  out << "  </g>\n";
}

void write_points(std::ostream& out, const Biplot& b, const Frame& f) {
  out << "  <g id=\"points\" fill=\"#1f3a5f\">\n";
  for (const auto& p : b.points) {
    out << "    <circle cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y) << "\" r=\"" << num(0.8 * f.unit) << "\"/>\n";
  }
  out << "  </g>\n";
  out << "  <g id=\"point-labels\" fill=\"#1f3a5f\" font-size=\"" << num(3 * f.unit) << "\" text-anchor=\"middle\">\n";
  for (const auto& p : b.points) {
    out << "    <text x=\"" << num(p.x) << "\" y=\"" << num(-p.y - 1.5 * f.unit) << "\">"
        << detail::xml_escape(p.label) << "</text>\n";
  }
  out << "  </g>\n";
}

}  // namespace

void render_biplot_svg(const Biplot& biplot, std::ostream& out) {
  for (const auto* list : {&biplot.points, &biplot.arrows}) {
    for (const auto& p : *list) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw DomainError("biplot coordinate is not finite");
    }
  }
  const Frame f = frame_for(biplot);
  open_svg(out, f);
  write_arrows(out, biplot, f, "#b03a2e");
  write_points(out, biplot, f);
  out << "</svg>\n";
  if (!out) throw IoError("failed writing biplot SVG");
}

std::string render_biplot_svg(const Biplot& biplot) {
  std::ostringstream ss;
  render_biplot_svg(biplot, ss);
  return ss.str();
}

void render_overlay_svg(const CooccurrenceGraph& graph, const Biplot& biplot, std::ostream& out,
                        Diagnostics* diagnostics) {
  std::map<std::string, const BiplotPoint*> where;
  for (const auto& p : biplot.points) where[p.label] = &p;
  std::size_t placed = 0;
  for (const auto& [name, count] : graph.nodes) {
    if (where.count(name)) {
      ++placed;
    } else if (diagnostics) {
      diagnostics->push_back({0, "overlay: node '" + name + "' has no biplot coordinates; dropped"});
    }
  }
  if (placed == 0) throw ValidationError("overlay: no co-occurrence node appears in the biplot");

  std::vector<std::pair<NamePair, long>> edges;
  long lo = 0, hi = 0;
  for (const auto& [pair, w] : graph.edges) {
    if (!where.count(pair.first) || !where.count(pair.second)) continue;
    lo = edges.empty() ? w : std::min(lo, w);
    hi = edges.empty() ? w : std::max(hi, w);
    edges.emplace_back(pair, w);
  }

  const Frame f = frame_for(biplot);
  open_svg(out, f);
  write_arrows(out, biplot, f, "#d9a8a2");
  out << "  <g id=\"edges\" stroke=\"#555555\" stroke-opacity=\"0.7\" stroke-linecap=\"round\">\n";
  for (const auto& [pair, w] : edges) {
    const BiplotPoint& a = *where.at(pair.first);
    const BiplotPoint& b = *where.at(pair.second);
    double t = hi > lo ? static_cast<double>(w - lo) / static_cast<double>(hi - lo) : 1.0;
    out << "    <line x1=\"" << num(a.x) << "\" y1=\"" << num(-a.y) << "\" x2=\"" << num(b.x) << "\" y2=\"" << num(-b.y)
        << "\" stroke-width=\"" << num((0.2 + 1.3 * t) * f.unit) << "\"><title>" << detail::xml_escape(pair.first)
        << " -- " << detail::xml_escape(pair.second) << ": " << w << "</title></line>\n";
  }
  out << "  </g>\n";
  write_points(out, biplot, f);
  out << "</svg>\n";
  if (!out) throw IoError("failed writing overlay SVG");
}

std::string render_overlay_svg(const CooccurrenceGraph& graph, const Biplot& biplot, Diagnostics* diagnostics) {
  std::ostringstream ss;
  render_overlay_svg(graph, biplot, ss, diagnostics);
  return ss.str();
}

}  // namespace folk
