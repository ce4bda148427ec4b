#include "netspec/svg_plot.hpp"

#include "netspec/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace netspec {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += ch;
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                       const std::vector<PlotSeries>& series)
{
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    double y_lo = 0.0;
    double y_hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        for (double x : s.x) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
        }
        for (double y : s.y) {
            y_lo = std::min(y_lo, y);
            y_hi = std::max(y_hi, y);
        }
    }
    if (!(x_hi > x_lo)) x_hi = x_lo + 1.0;
    if (!(y_hi > y_lo)) y_hi = y_lo + 1.0;
    y_hi += 0.05 * (y_hi - y_lo);

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
        << "</text>\n";
    svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
        << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 5; ++t) {
        const double xv = x_lo + (x_hi - x_lo) * t / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * t / 5.0;
        svg << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(kHeight - kBottom + 16)
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        svg << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">"
            << tick_label(yv) << "</text>\n";
    }
    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 10) << "\" text-anchor=\"middle\">"
        << escape(x_label) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << num(kTop + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
        if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        if (s.steps) {
            for (std::size_t b = 0; b < s.y.size() && b + 1 < s.x.size(); ++b) {
                svg << num(px(s.x[b])) << ',' << num(py(s.y[b])) << ' ' << num(px(s.x[b + 1])) << ','
                    << num(py(s.y[b])) << ' ';
            }
        } else {
            for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
                svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
            }
        }
        svg << "\"/>\n";
        if (!s.label.empty()) {
            const double ly = kTop + 16 + 16 * legend_row++;
            svg << "<line x1=\"" << num(kWidth - 190) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(kWidth - 165)
                << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << num(kWidth - 160) << "\" y=\"" << num(ly) << "\">" << escape(s.label)
                << "</text>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::filesystem::path& path, const std::string& title, const std::string& x_label,
               const std::string& y_label, const std::vector<PlotSeries>& series)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SpectrumError(ErrorKind::Io, "cannot write " + path.string());
    out << render_svg(title, x_label, y_label, series);
}

}  // namespace netspec
