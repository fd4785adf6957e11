#include "gilet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace gilet {

namespace {

std::string num(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::string render_svg(const SvgFigure& fig) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& l : fig.layers) {
    for (const auto& [x, y] : l.xy) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  if (fig.stable_line_x) {
    xmin = std::min(xmin, *fig.stable_line_x);
    xmax = std::max(xmax, *fig.stable_line_x);
  }
  if (!std::isfinite(xmin)) xmin = 0.0, xmax = 1.0;
  if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
  if (xmax - xmin < 1e-12) xmin -= 0.5, xmax += 0.5;
  if (ymax - ymin < 1e-12) ymin -= 0.5, ymax += 0.5;
  const double padx = 0.03 * (xmax - xmin), pady = 0.03 * (ymax - ymin);
  xmin -= padx, xmax += padx, ymin -= pady, ymax += pady;

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = fig.width - left - right, ph = fig.height - top - bottom;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return top + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fig.width << "\" height=\"" << fig.height
     << "\" viewBox=\"0 0 " << fig.width << ' ' << fig.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!fig.title.empty()) {
    os << "<text x=\"" << num(fig.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"16\">" << escape(fig.title) << "</text>\n";
  }
  os << "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
     << "\"/>\n";
  for (double t : nice_ticks(xmin, xmax)) {
    os << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(sx(t)) << "\" y2=\""
       << num(top + ph + 5) << "\"/>\n";
  }
  for (double t : nice_ticks(ymin, ymax)) {
    os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << num(left) << "\" y2=\""
       << num(sy(t)) << "\"/>\n";
  }
  os << "</g>\n<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : nice_ticks(xmin, xmax)) {
    os << "<text x=\"" << num(sx(t)) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
       << num(t, 3) << "</text>\n";
  }
  for (double t : nice_ticks(ymin, ymax)) {
    os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(sy(t) + 4) << "\" text-anchor=\"end\">" << num(t, 3)
       << "</text>\n";
  }
  os << "</g>\n";

  for (std::size_t i = 0; i < fig.layers.size(); ++i) {
    const SvgLayer& l = fig.layers[i];
    os << "<g id=\"layer" << i << "\" class=\"" << (l.kind == SvgLayer::Kind::Points ? "points" : "polyline") << "\"";
    if (!l.label.empty()) os << " data-label=\"" << escape(l.label) << "\"";
    os << ">\n";
    if (l.kind == SvgLayer::Kind::Points) {
      for (const auto& [x, y] : l.xy) {
        os << "<rect x=\"" << num(sx(x) - 0.5) << "\" y=\"" << num(sy(y) - 0.5)
           << "\" width=\"1\" height=\"1\" fill=\"" << l.color << "\"/>\n";
      }
    } else if (!l.xy.empty()) {
      os << "<polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"0.6\" points=\"";
      for (std::size_t k = 0; k < l.xy.size(); ++k) {
        os << (k ? " " : "") << num(sx(l.xy[k].first)) << ',' << num(sy(l.xy[k].second));
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  if (fig.stable_line_x) {
    os << "<line id=\"stable-line\" x1=\"" << num(sx(*fig.stable_line_x)) << "\" y1=\"" << num(top) << "\" x2=\""
       << num(sx(*fig.stable_line_x)) << "\" y2=\"" << num(top + ph)
       << "\" stroke=\"#d62728\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::vector<XY> read_xy_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string line;
  std::vector<XY> out;
  if (!std::getline(in, line)) return out;
  const auto header = split_csv(line);
  const auto xi = std::find(header.begin(), header.end(), "x") - header.begin();
  const auto yi = std::find(header.begin(), header.end(), "y") - header.begin();
  if (xi == static_cast<long>(header.size()) || yi == static_cast<long>(header.size())) {
    throw IoError(path + ": header lacks x and y columns");
  }
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    try {
      out.emplace_back(std::stod(cells.at(static_cast<std::size_t>(xi))), std::stod(cells.at(static_cast<std::size_t>(yi))));
    } catch (const std::exception&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed row");
    }
  }
  return out;
}

}  // namespace gilet
