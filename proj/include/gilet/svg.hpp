#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gilet {

using XY = std::pair<double, double>;

struct SvgLayer {
  enum class Kind { Points, Polyline };
  Kind kind = Kind::Points;
  std::vector<XY> xy;
  std::string color = "#000000";
  std::string label;
};

struct SvgFigure {
  std::vector<SvgLayer> layers;
  std::optional<double> stable_line_x;
  std::string title;
  int width = 800;
  int height = 600;
};

/// Layered scatter/polyline plot with axes and numeric ticks. Output depends
/// only on the figure content.
std::string render_svg(const SvgFigure& fig);

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the x and y columns of a CSV file with a header row.
std::vector<XY> read_xy_csv(const std::string& path);

/// Evenly spaced "nice" tick values covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace gilet
