#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>

namespace gofpower::cli {

struct SvgSeries {
  std::span<const std::pair<double, double>> points;
  std::string color;
  /// Polyline when false, dots when true.
  bool markers = false;
};

/// Power-vs-significance plot on the unit square with the null diagonal.
void write_power_svg(std::ostream& out, const std::string& title,
                     std::span<const SvgSeries> series);

}  // namespace gofpower::cli
