#pragma once

#include <algorithm>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsdt/bench/experiment.hpp"
#include "lsdt/bench/stats.hpp"
#include "lsdt/bench/sweep.hpp"

namespace lsdt {

inline void write_regret_csv(std::ostream& out, const std::vector<RegretSummaryRow>& rows) {
    out << "policy,t,mean_regret,ci95,replications\n";
    for (const auto& r : rows)
        out << r.policy << ',' << r.t << ',' << format_number(r.stats.mean) << ',' << format_number(r.stats.ci95)
            << ',' << r.stats.n << '\n';
}

inline void write_size_csv(std::ostream& out, const std::vector<SizeRow>& rows) {
    out << "x,mean_size,ci95,replications\n";
    for (const auto& r : rows)
        out << format_number(r.x) << ',' << format_number(r.stats.mean) << ',' << format_number(r.stats.ci95) << ','
            << r.stats.n << '\n';
}

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Line chart, one polyline per series. At most 400 points per series are
/// drawn (uniform stride, last point kept).
inline void write_svg(std::ostream& out, const std::vector<SvgSeries>& series, const std::string& x_label,
                      const std::string& y_label) {
    constexpr double width = 640, height = 400, left = 70, right = 150, top = 20, bottom = 50;
    constexpr std::size_t max_points = 400;
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    bool first = true;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (first) {
                x_min = x_max = s.x[i];
                y_min = std::min(0.0, s.y[i]);
                y_max = s.y[i];
                first = false;
            }
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, s.y[i]);
            y_max = std::max(y_max, s.y[i]);
        }
    if (x_max <= x_min) x_max = x_min + 1;
    if (y_max <= y_min) y_max = y_min + 1;
    const double plot_w = width - left - right, plot_h = height - top - bottom;
    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x_min + (x_max - x_min) * k / 4.0, yv = y_min + (y_max - y_min) * k / 4.0;
        out << "<text x=\"" << format_number(px(xv)) << "\" y=\"" << top + plot_h + 16
            << "\" text-anchor=\"middle\">" << format_number(xv) << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << format_number(py(yv) + 4) << "\" text-anchor=\"end\">"
            << format_number(yv) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10 << "\" text-anchor=\"middle\">" << x_label
        << "</text>\n";
    out << "<text transform=\"translate(16," << top + plot_h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << y_label << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& sr = series[s];
        const char* color = colors[s % std::size(colors)];
        const std::size_t n = std::min(sr.x.size(), sr.y.size());
        const std::size_t stride = std::max<std::size_t>(1, (n + max_points - 1) / max_points);
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; i += stride) out << format_number(px(sr.x[i])) << ',' << format_number(py(sr.y[i])) << ' ';
        if (n > 0 && (n - 1) % stride != 0) out << format_number(px(sr.x[n - 1])) << ',' << format_number(py(sr.y[n - 1]));
        out << "\"/>\n";
        const double ly = top + 14 + 18.0 * static_cast<double>(s);
        out << "<line x1=\"" << left + plot_w + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + plot_w + 30
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plot_w + 36 << "\" y=\"" << ly << "\">" << sr.label << "</text>\n";
    }
    out << "</svg>\n";
}

/// Mean regret curves of a Monte Carlo run, one series per policy.
inline std::vector<SvgSeries> regret_series(const std::vector<RegretSummaryRow>& rows) {
    std::vector<SvgSeries> out;
    for (const auto& r : rows) {
        if (out.empty() || out.back().label != r.policy) out.push_back({r.policy, {}, {}});
        out.back().x.push_back(static_cast<double>(r.t));
        out.back().y.push_back(r.stats.mean);
    }
    return out;
}

template <class Writer>
void write_file(const std::string& path, Writer writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace lsdt
