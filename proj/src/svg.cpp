#include "fgb/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fgb {

namespace {

constexpr double kWidth = 860.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 80.0, kRight = 30.0, kTop = 30.0, kBottom = 60.0;
constexpr double kLogFloor = 1e-3;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

// Fixed two decimals keeps coordinates byte-stable.
std::string px(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string tick_label(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

struct Scale {
  double lo, hi;
  double a, b;  // pixel = a * value + b
  double map(double v) const { return a * v + b; }
};

Scale make_scale(double lo, double hi, double pix_lo, double pix_hi) {
  if (hi <= lo) hi = lo + 1.0;
  const double a = (pix_hi - pix_lo) / (hi - lo);
  return Scale{lo, hi, a, pix_lo - a * lo};
}

}  // namespace

std::string render_line_chart(const std::vector<PlotCurve>& curves,
                              const std::string& x_label,
                              const std::string& y_label, bool loglog) {
  if (curves.empty()) throw std::invalid_argument("no curves to plot");

  auto tx = [&](double x) { return loglog ? std::log10(std::max(x, 1.0)) : x; };
  auto ty = [&](double y) {
    return loglog ? std::log10(std::max(y, kLogFloor)) : y;
  };

  double xmax = 1.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const auto& c : curves) {
    xmax = std::max(xmax, static_cast<double>(c.values.size()));
    for (double v : c.values) {
      const double y = ty(v);
      if (first) {
        ymin = ymax = y;
        first = false;
      }
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  const double x_lo = loglog ? 0.0 : 1.0;
  const Scale sx = make_scale(x_lo, tx(xmax), kLeft, kWidth - kRight);
  if (!loglog) ymin = std::min(ymin, 0.0);
  const Scale sy = make_scale(ymin, ymax, kHeight - kBottom, kTop);

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) +
         "\" height=\"" + px(kHeight) + "\" viewBox=\"0 0 " + px(kWidth) + " " +
         px(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kHeight - kBottom) +
         "\" x2=\"" + px(kWidth - kRight) + "\" y2=\"" +
         px(kHeight - kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" +
         px(kLeft) + "\" y2=\"" + px(kHeight - kBottom) +
         "\" stroke=\"black\"/>\n";

  const int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = sx.lo + (sx.hi - sx.lo) * i / kTicks;
    const double xpix = sx.map(fx);
    svg += "<line x1=\"" + px(xpix) + "\" y1=\"" + px(kHeight - kBottom) +
           "\" x2=\"" + px(xpix) + "\" y2=\"" + px(kHeight - kBottom + 6) +
           "\" stroke=\"black\"/>\n";
    const double shown = loglog ? std::pow(10.0, fx) : fx;
    svg += "<text x=\"" + px(xpix) + "\" y=\"" + px(kHeight - kBottom + 22) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + tick_label(shown) +
           "</text>\n";
    const double fy = sy.lo + (sy.hi - sy.lo) * i / kTicks;
    const double ypix = sy.map(fy);
    svg += "<line x1=\"" + px(kLeft - 6) + "\" y1=\"" + px(ypix) + "\" x2=\"" +
           px(kLeft) + "\" y2=\"" + px(ypix) + "\" stroke=\"black\"/>\n";
    const double shown_y = loglog ? std::pow(10.0, fy) : fy;
    svg += "<text x=\"" + px(kLeft - 10) + "\" y=\"" + px(ypix + 4) +
           "\" font-size=\"12\" text-anchor=\"end\">" + tick_label(shown_y) +
           "</text>\n";
  }
  svg += "<text x=\"" + px((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
         px(kHeight - 16) + "\" font-size=\"14\" text-anchor=\"middle\">" +
         x_label + "</text>\n";
  svg += "<text x=\"18\" y=\"" + px((kTop + kHeight - kBottom) / 2) +
         "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         px((kTop + kHeight - kBottom) / 2) + ")\">" + y_label + "</text>\n";

  // Curves: subsample long series so files stay small; one polyline each.
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    const std::size_t n = curve.values.size();
    const std::size_t step = std::max<std::size_t>(1, n / 2000);
    std::string points;
    for (std::size_t i = 0; i < n; i += step) {
      points += px(sx.map(tx(static_cast<double>(i + 1)))) + "," +
                px(sy.map(ty(curve.values[i]))) + " ";
    }
    if (n > 0 && (n - 1) % step != 0) {
      points += px(sx.map(tx(static_cast<double>(n)))) + "," +
                px(sy.map(ty(curve.values[n - 1]))) + " ";
    }
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    // Legend entry.
    const double ly = kTop + 10 + 18.0 * static_cast<double>(c);
    svg += "<line x1=\"" + px(kWidth - kRight - 150) + "\" y1=\"" + px(ly) +
           "\" x2=\"" + px(kWidth - kRight - 120) + "\" y2=\"" + px(ly) +
           "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + px(kWidth - kRight - 112) + "\" y=\"" + px(ly + 4) +
           "\" font-size=\"12\">" + curve.label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_svg(const std::string& svg, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write SVG file: " + path);
  out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fgb
