#include "graphsal/render.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "graphsal/layout.hpp"

namespace graphsal {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Rgb {
  int r, g, b;
};

Rgb score_color(double score, double max_abs, bool is_signed) {
  if (max_abs <= 0.0) return Rgb{255, 255, 255};
  const double t = std::clamp(score / max_abs, -1.0, 1.0);
  if (!is_signed || t >= 0.0) {
    // white -> red
    return Rgb{255 - static_cast<int>(std::lround(35.0 * t)),
               255 - static_cast<int>(std::lround(215.0 * t)),
               255 - static_cast<int>(std::lround(225.0 * t))};
  }
  // white -> blue
  const double u = -t;
  return Rgb{255 - static_cast<int>(std::lround(225.0 * u)),
             255 - static_cast<int>(std::lround(175.0 * u)),
             255 - static_cast<int>(std::lround(35.0 * u))};
}

std::string color_str(const Rgb& c) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)", c.r, c.g, c.b);
  return buf;
}

} // namespace

std::string render_molecule_svg(const MolecularGraph& graph,
                                const std::vector<double>& scores, bool is_signed,
                                const RenderSpec& spec) {
  if (static_cast<int>(scores.size()) != graph.atom_count())
    throw std::invalid_argument("render: " + std::to_string(scores.size()) +
                                " scores for " + std::to_string(graph.atom_count()) +
                                " atoms");

  const std::vector<Point> raw = layout_2d(graph);

  // fit into the canvas with a margin
  const double margin = 36.0;
  double lox = raw[0].x, hix = raw[0].x, loy = raw[0].y, hiy = raw[0].y;
  for (const Point& p : raw) {
    lox = std::min(lox, p.x);
    hix = std::max(hix, p.x);
    loy = std::min(loy, p.y);
    hiy = std::max(hiy, p.y);
  }
  const double span_x = std::max(1e-6, hix - lox);
  const double span_y = std::max(1e-6, hiy - loy);
  const double scale =
      std::min((spec.width - 2 * margin) / span_x, (spec.height - 2 * margin) / span_y);
  std::vector<Point> pos(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) {
    pos[i].x = margin + (raw[i].x - lox) * scale +
               (spec.width - 2 * margin - span_x * scale) / 2.0;
    pos[i].y = margin + (raw[i].y - loy) * scale +
               (spec.height - 2 * margin - span_y * scale) / 2.0;
  }

  double max_abs = 0.0;
  for (double s : scores) max_abs = std::max(max_abs, std::fabs(s));

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // bonds under atoms
  for (const Bond& b : graph.bonds()) {
    const Point& a = pos[b.i];
    const Point& c = pos[b.j];
    const double dx = c.x - a.x, dy = c.y - a.y;
    const double d = std::max(1e-6, std::hypot(dx, dy));
    const double ox = -dy / d * 2.6, oy = dx / d * 2.6; // parallel-line offset
    auto line = [&](double shift, const char* dash) {
      svg << "<line x1=\"" << fmt(a.x + ox * shift) << "\" y1=\"" << fmt(a.y + oy * shift)
          << "\" x2=\"" << fmt(c.x + ox * shift) << "\" y2=\"" << fmt(c.y + oy * shift)
          << "\" stroke=\"#444\" stroke-width=\"1.6\"" << dash << "/>\n";
    };
    switch (b.order) {
      case BondOrder::single: line(0.0, ""); break;
      case BondOrder::double_bond:
        line(-0.6, "");
        line(0.6, "");
        break;
      case BondOrder::triple:
        line(-1.1, "");
        line(0.0, "");
        line(1.1, "");
        break;
      case BondOrder::aromatic:
        line(-0.6, "");
        line(0.6, " stroke-dasharray=\"4 3\"");
        break;
    }
  }

  for (int i = 0; i < graph.atom_count(); ++i) {
    const Atom& atom = graph.atom(i);
    const Rgb fill = score_color(scores[i], max_abs, is_signed);
    svg << "<circle cx=\"" << fmt(pos[i].x) << "\" cy=\"" << fmt(pos[i].y) << "\" r=\""
        << fmt(spec.atom_radius) << "\" fill=\"" << color_str(fill)
        << "\" stroke=\"#777\" stroke-width=\"1\">";
    svg << "<title>atom " << i << " (" << atom.element << "): " << fmt(scores[i])
        << "</title></circle>\n";

    std::string label = atom.element;
    if (atom.aromatic)
      label[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(label[0])));
    if (atom.formal_charge > 0)
      label += atom.formal_charge == 1 ? "+" : "+" + std::to_string(atom.formal_charge);
    else if (atom.formal_charge < 0)
      label += atom.formal_charge == -1 ? "-" : std::to_string(atom.formal_charge);
    svg << "<text x=\"" << fmt(pos[i].x) << "\" y=\"" << fmt(pos[i].y + 4.0)
        << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << label
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace graphsal
