#pragma once
// Minimal deterministic SVG rendering: a viridis heatmap for resonance maps
// and a polyline plot for traces/cuts.  No external plotting dependency and
// no run-to-run variation in the output bytes.

#include <string>
#include <vector>

#include "analysis.hpp"

namespace tmjc {

std::string heatmap_svg(const ScanResult& r, const std::string& title);

struct LineSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
    std::string color;  // CSS color, e.g. "#1f77b4"
};

std::string line_plot_svg(const std::vector<LineSeries>& series,
                          const std::string& x_label, const std::string& y_label,
                          const std::string& title);

} // namespace tmjc
