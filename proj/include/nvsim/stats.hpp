#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nvsim {

// Quantile of pre-sorted data: linear interpolation between order statistics
// at rank p * (n - 1), zero-based.
inline double interpolated_quantile(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::domain_error("quantile of empty data");
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("fractile must lie strictly in (0, 1)");
    const double rank = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(rank);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double w = rank - static_cast<double>(lo);
    return (1.0 - w) * sorted[lo] + w * sorted[lo + 1];
}

// Cross-run summary of one metric. stdev is the sample standard deviation
// (n - 1 denominator) and moe95 = 1.96 * stdev / sqrt(n); both are absent
// for a single observation.
struct AggregateStats {
    std::size_t n = 0;
    double mean = 0.0;
    std::optional<double> stdev;
    std::optional<double> moe95;
    double median = 0.0;
    std::vector<std::pair<double, double>> percentiles;  // (fractile, value), ascending

    double percentile(double fractile) const {
        for (const auto& [p, v] : percentiles)
            if (p == fractile) return v;
        throw std::domain_error("percentile was not requested at aggregation");
    }
};

// All statistics are computed on the sorted copy, so the result is exactly
// invariant under permutation of the input.
inline AggregateStats aggregate(std::span<const double> values,
                                std::span<const double> fractiles = {}) {
    if (values.empty()) throw std::domain_error("aggregate of an empty sample");
    for (double p : fractiles)
        if (!(p > 0.0 && p < 1.0)) throw std::domain_error("fractile must lie strictly in (0, 1)");

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = sorted.size();

    AggregateStats out;
    out.n = n;
    double sum = 0.0;
    for (double v : sorted) sum += v;
    out.mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0;
        for (double v : sorted) ss += (v - out.mean) * (v - out.mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        out.stdev = sd;
        out.moe95 = 1.96 * sd / std::sqrt(static_cast<double>(n));
    }
    out.median = interpolated_quantile(sorted, 0.5);

    std::vector<double> ps(fractiles.begin(), fractiles.end());
    std::sort(ps.begin(), ps.end());
    out.percentiles.reserve(ps.size());
    for (double p : ps) out.percentiles.emplace_back(p, interpolated_quantile(sorted, p));
    return out;
}

}  // namespace nvsim
