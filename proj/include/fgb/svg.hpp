#pragma once

#include <string>
#include <vector>

namespace fgb {

struct PlotCurve {
  std::string label;
  std::vector<double> values;  // y at x = 1, 2, ...
};

// Self-contained SVG line chart: one polyline per curve, axis ticks and
// labels, a legend. `loglog` plots both axes on log10 scales (values are
// floored at a small positive epsilon first). Byte-deterministic.
std::string render_line_chart(const std::vector<PlotCurve>& curves,
                              const std::string& x_label,
                              const std::string& y_label, bool loglog);

void write_svg(const std::string& svg, const std::string& path);

}  // namespace fgb
