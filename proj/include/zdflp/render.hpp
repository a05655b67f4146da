#ifndef ZDFLP_RENDER_HPP
#define ZDFLP_RENDER_HPP

#include <string>
#include <vector>

#include "zdflp/common.hpp"
#include "zdflp/solution.hpp"

namespace zdflp {

struct RenderStyle {
  double scale = 40.0;  // pixels per length unit
  bool show_io = true;
  bool show_zone_bounds = true;
  bool replacement_labels = true;
};

namespace detail {

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// Renders one period of a layout as an SVG 1.1 document: facility frame, zone
// rectangles, department rectangles with id labels (or "new -> old" when the
// department replaces another), and I/O point markers. Model coordinates have
// y pointing up, so y is flipped into screen convention.
inline std::string render_svg_period(const LayoutSolution& sol, std::size_t period,
                                     const RenderStyle& style = {}) {
  if (style.scale <= 0.0) throw std::invalid_argument("render scale must be positive");
  if (period >= sol.periods.size())
    throw std::out_of_range("solution has no period " + std::to_string(period + 1));
  const PeriodLayout& p = sol.periods[period];

  const double margin = 10.0;
  const double w = sol.facility_x * style.scale;
  const double h = sol.facility_y * style.scale;
  auto sx = [&](double x) { return margin + x * style.scale; };
  auto sy = [&](double y) { return margin + (sol.facility_y - y) * style.scale; };
  auto num = [](double v) { return format_double(v); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         num(w + 2 * margin) + "\" height=\"" + num(h + 2 * margin) + "\">\n";
  svg += "  <title>period " + std::to_string(period + 1) + "</title>\n";
  svg += "  <rect class=\"facility\" x=\"" + num(sx(0)) + "\" y=\"" + num(sy(sol.facility_y)) +
         "\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";

  if (style.show_zone_bounds)
    for (const auto& [k, g] : p.zone_bounds)
      svg += "  <rect class=\"zone\" x=\"" + num(sx(g.west)) + "\" y=\"" + num(sy(g.north)) +
             "\" width=\"" + num((g.east - g.west) * style.scale) + "\" height=\"" +
             num((g.north - g.south) * style.scale) +
             "\" fill=\"#f3f3f3\" stroke=\"#888888\" stroke-width=\"1\" "
             "stroke-dasharray=\"6 3\"/>\n";

  for (const auto& [id, zone] : p.assignment) {
    (void)zone;
    const auto& c = p.dept_center.at(id);
    const auto& half = p.dept_half.at(id);
    svg += "  <rect class=\"department\" x=\"" + num(sx(c[0] - half[0])) + "\" y=\"" +
           num(sy(c[1] + half[1])) + "\" width=\"" + num(2 * half[0] * style.scale) +
           "\" height=\"" + num(2 * half[1] * style.scale) +
           "\" fill=\"#cfe2ff\" stroke=\"#1f3b70\" stroke-width=\"1.5\"/>\n";
    std::string label = id;
    if (style.replacement_labels) {
      auto rep = sol.replaces.find(id);
      if (rep != sol.replaces.end()) label = id + " \xE2\x86\x92 " + rep->second;
    }
    svg += "  <text x=\"" + num(sx(c[0])) + "\" y=\"" + num(sy(c[1])) +
           "\" font-size=\"12\" text-anchor=\"middle\" dominant-baseline=\"middle\">" +
           detail::xml_escape(label) + "</text>\n";
  }

  if (style.show_io)
    for (const auto& [id, g] : p.io_point) {
      (void)id;
      svg += "  <circle class=\"io\" cx=\"" + num(sx(g[0])) + "\" cy=\"" + num(sy(g[1])) +
             "\" r=\"3\" fill=\"#c0392b\"/>\n";
    }

  svg += "</svg>\n";
  return svg;
}

// One document per period.
inline std::vector<std::string> render_svg(const LayoutSolution& sol,
                                           const RenderStyle& style = {}) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < sol.periods.size(); ++t)
    out.push_back(render_svg_period(sol, t, style));
  return out;
}

}  // namespace zdflp

#endif  // ZDFLP_RENDER_HPP
