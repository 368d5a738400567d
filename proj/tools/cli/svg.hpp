// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cubicpt::cli {

// Minimal line plot: data coordinates mapped to a fixed canvas, axes with ticks, no external resources.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double width = 1.5, bool dashed = false);
  void markers(const std::vector<std::pair<double, double>>& pts, const std::string& color, double radius = 3.0);
  void label(double x, double y, const std::string& text, const std::string& color = "#000");
  // Fixes the data window; otherwise it is taken from the content.
  void window(double x0, double x1, double y0, double y1);
  void equal_aspect(bool on) { equal_ = on; }

  std::string str() const;

 private:
  struct Item {
    enum Kind { line, dots, caption } kind;
    std::vector<std::pair<double, double>> pts;
    std::string color;
    double width;
    bool dashed;
    std::string text;
  };
  std::string title_, xl_, yl_;
  std::vector<Item> items_;
  bool fixed_ = false, equal_ = false;
  double x0_ = 0, x1_ = 1, y0_ = 0, y1_ = 1;
};

std::string xml_escape(const std::string& s);

}  // namespace cubicpt::cli
