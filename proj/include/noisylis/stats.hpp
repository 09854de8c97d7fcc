#pragma once

// Small descriptive statistics used by the experiment tables.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace noisylis::stats {

/// Linear-interpolation quantile (the "type 7" estimator), q in [0, 1].
inline double quantile(std::span<const double> values, double q) {
    if (values.empty()) throw std::invalid_argument("quantile of empty sample");
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    const double h = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline double median(std::span<const double> values) { return quantile(values, 0.5); }

inline double mean(std::span<const double> values) {
    if (values.empty()) throw std::invalid_argument("mean of empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

struct Interval {
    double low = 0.0;
    double high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
inline Interval wilson_interval(std::size_t successes, std::size_t trials, double z = kZ95) {
    if (trials == 0) return {0.0, 1.0};
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    // The bounds are exact at the extremes; rounding would leave ~1e-18 there.
    const double low = successes == 0 ? 0.0 : std::max(0.0, center - half);
    const double high = successes == trials ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

/// Ordinary least-squares slope of y on x.
inline double ols_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more paired points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0) throw std::invalid_argument("slope undefined for constant x");
    return sxy / sxx;
}

}  // namespace noisylis::stats
