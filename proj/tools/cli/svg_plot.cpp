#include "cli/svg_plot.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace gofpower::cli {

namespace {

constexpr double kSize = 420.0;
constexpr double kMargin = 50.0;

double px(double alpha) { return kMargin + std::clamp(alpha, 0.0, 1.0) * kSize; }
double py(double power) { return kMargin + (1.0 - std::clamp(power, 0.0, 1.0)) * kSize; }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_power_svg(std::ostream& out, const std::string& title,
                     std::span<const SvgSeries> series) {
  const double total = kSize + 2 * kMargin;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" "
                "viewBox=\"0 0 %.0f %.0f\">\n",
                total, total, total, total);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << total / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(title) << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" "
                "stroke=\"black\"/>\n",
                kMargin, kMargin, kSize, kSize);
  out << buf;
  for (int tick = 0; tick <= 10; ++tick) {
    const double v = tick / 10.0;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"10\">%.1f</text>\n"
                  "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-size=\"10\">%.1f</text>\n",
                  px(v), kMargin + kSize + 15, v, kMargin - 5, py(v) + 3, v);
    out << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"12\">"
                "significance level</text>\n"
                "<text x=\"15\" y=\"%.1f\" text-anchor=\"middle\" font-size=\"12\" "
                "transform=\"rotate(-90 15 %.1f)\">power</text>\n",
                total / 2, total - 10, total / 2, total / 2);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"gray\" "
                "stroke-dasharray=\"4 4\"/>\n",
                px(0), py(0), px(1), py(1));
  out << buf;

  for (const SvgSeries& s : series) {
    if (s.markers) {
      for (const auto& [a, p] : s.points) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.5\" fill=\"%s\"/>\n",
                      px(a), py(p), s.color.c_str());
        out << buf;
      }
    } else {
      out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1\" points=\"";
      for (const auto& [a, p] : s.points) {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(a), py(p));
        out << buf;
      }
      out << "\"/>\n";
    }
  }
  out << "</svg>\n";
}

}  // namespace gofpower::cli
