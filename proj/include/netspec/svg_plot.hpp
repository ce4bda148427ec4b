#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace netspec {

struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f4e9a";
    std::string label;
    /// Draw as histogram steps; x then holds bin edges (one more than y).
    bool steps = false;
    bool dashed = false;
};

/// Minimal static line plot: axes, tick labels, polylines, legend.
std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series);

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<PlotSeries>& series);

}  // namespace netspec
