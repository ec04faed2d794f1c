#pragma once

#include <cmath>
#include <span>

namespace pdeid::stats {

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

/// Population standard deviation.
inline double stddev(std::span<const double> v) {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

/// Standardized third moment; 0 for constant spans.
inline double skewness(std::span<const double> v) {
    if (v.empty()) return 0.0;
    const double m = mean(v);
    double s2 = 0.0;
    double s3 = 0.0;
    for (double x : v) {
        const double d = x - m;
        s2 += d * d;
        s3 += d * d * d;
    }
    const double n = static_cast<double>(v.size());
    const double var = s2 / n;
    if (var <= 0.0) return 0.0;
    return (s3 / n) / (var * std::sqrt(var));
}

inline double minimum(std::span<const double> v) {
    double lo = v[0];
    for (double x : v) lo = x < lo ? x : lo;
    return lo;
}

inline double maximum(std::span<const double> v) {
    double hi = v[0];
    for (double x : v) hi = x > hi ? x : hi;
    return hi;
}

} // namespace pdeid::stats
