#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <span>
#include <string>

#include <boost/math/distributions/students_t.hpp>

namespace lsdt {

struct MeanCi {
    double mean = 0.0;
    double ci95 = 0.0;  // half-width; 0 for fewer than two samples
    std::size_t n = 0;
};

/// Sample mean with a Student-t 95% confidence half-width.
inline MeanCi mean_ci(std::span<const double> values) {
    MeanCi out;
    out.n = values.size();
    if (out.n == 0) return out;
    double sum = 0.0;
    for (double v : values) sum += v;
    out.mean = sum / static_cast<double>(out.n);
    if (out.n < 2 || std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
        return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(out.n - 1));
    const boost::math::students_t dist(static_cast<double>(out.n - 1));
    out.ci95 = boost::math::quantile(dist, 0.975) * sd / std::sqrt(static_cast<double>(out.n));
    return out;
}

/// Ten significant digits, locale independent. Used in every emitted file.
inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace lsdt
