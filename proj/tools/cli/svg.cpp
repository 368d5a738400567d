// SPDX-License-Identifier: Apache-2.0
#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cli/output.hpp"

namespace cubicpt::cli {

namespace {

constexpr double kW = 720, kH = 480, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::vector<double> ticks(double a, double b) {
  const double span = b - a;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0})
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  std::vector<double> t;
  for (double v = std::ceil(a / step) * step; v <= b + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  return t;
}

std::string num(double x) { return format_double(x, 6); }

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      case '"': o += "&quot;"; break;
      default: o += c;
    }
  }
  return o;
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), xl_(std::move(x_label)), yl_(std::move(y_label)) {}

void SvgPlot::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color, double width,
                       bool dashed) {
  items_.push_back({Item::line, pts, color, width, dashed, ""});
}

void SvgPlot::markers(const std::vector<std::pair<double, double>>& pts, const std::string& color, double radius) {
  items_.push_back({Item::dots, pts, color, radius, false, ""});
}

void SvgPlot::label(double x, double y, const std::string& text, const std::string& color) {
  items_.push_back({Item::caption, {{x, y}}, color, 0.0, false, text});
}

void SvgPlot::window(double x0, double x1, double y0, double y1) {
  fixed_ = true;
  x0_ = x0;
  x1_ = x1;
  y0_ = y0;
  y1_ = y1;
}

std::string SvgPlot::str() const {
  double x0 = x0_, x1 = x1_, y0 = y0_, y1 = y1_;
  if (!fixed_) {
    x0 = y0 = INFINITY;
    x1 = y1 = -INFINITY;
    for (const auto& it : items_)
      for (auto [x, y] : it.pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    const double px = 0.05 * std::max(x1 - x0, 1e-12), py = 0.05 * std::max(y1 - y0, 1e-12);
    x0 -= px, x1 += px, y0 -= py, y1 += py;
  }
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  if (equal_) {
    const double sx = (x1 - x0) / pw, sy = (y1 - y0) / ph, s = std::max(sx, sy);
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    x0 = cx - 0.5 * s * pw, x1 = cx + 0.5 * s * pw, y0 = cy - 0.5 * s * ph, y1 = cy + 0.5 * s * ph;
  }
  auto X = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH << "\" viewBox=\"0 0 "
    << kW << " " << kH << "\">\n"
    << "<rect x=\"0\" y=\"0\" width=\"" << kW << "\" height=\"" << kH << "\" fill=\"#fff\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
    << xml_escape(title_) << "</text>\n"
    << "<g font-family=\"sans-serif\" font-size=\"11\" stroke=\"none\" fill=\"#333\">\n";
  for (double t : ticks(x0, x1))
    o << "<line x1=\"" << num(X(t)) << "\" y1=\"" << kTop << "\" x2=\"" << num(X(t)) << "\" y2=\"" << kTop + ph
      << "\" stroke=\"#e4e4e4\"/>\n<text x=\"" << num(X(t)) << "\" y=\"" << kTop + ph + 16
      << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  for (double t : ticks(y0, y1))
    o << "<line x1=\"" << kLeft << "\" y1=\"" << num(Y(t)) << "\" x2=\"" << kLeft + pw << "\" y2=\"" << num(Y(t))
      << "\" stroke=\"#e4e4e4\"/>\n<text x=\"" << kLeft - 6 << "\" y=\"" << num(Y(t) + 4)
      << "\" text-anchor=\"end\">" << num(t) << "</text>\n";
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">" << xml_escape(xl_)
    << "</text>\n<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kTop + ph / 2 << ")\">" << xml_escape(yl_) << "</text>\n</g>\n"
    << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#000\"/>\n"
    << "<clipPath id=\"plot\"><rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\"/></clipPath>\n<g clip-path=\"url(#plot)\">\n";
  for (const auto& it : items_) {
    if (it.kind == Item::line) {
      // Non-finite points split the line.
      std::string pts;
      auto flush = [&] {
        if (!pts.empty())
          o << "<polyline fill=\"none\" stroke=\"" << it.color << "\" stroke-width=\"" << num(it.width) << "\""
            << (it.dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"" << pts << "\"/>\n";
        pts.clear();
      };
      for (auto [x, y] : it.pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
          flush();
          continue;
        }
        pts += (pts.empty() ? "" : " ") + num(X(x)) + "," + num(Y(y));
      }
      flush();
    } else if (it.kind == Item::dots) {
      for (auto [x, y] : it.pts)
        if (std::isfinite(x) && std::isfinite(y))
          o << "<circle cx=\"" << num(X(x)) << "\" cy=\"" << num(Y(y)) << "\" r=\"" << num(it.width) << "\" fill=\""
            << it.color << "\"/>\n";
    } else {
      o << "<text x=\"" << num(X(it.pts[0].first)) << "\" y=\"" << num(Y(it.pts[0].second))
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" << it.color << "\">" << xml_escape(it.text)
        << "</text>\n";
    }
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace cubicpt::cli
