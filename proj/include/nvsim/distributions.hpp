#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <variant>

#include "nvsim/random.hpp"

namespace nvsim {

// Daily demand models, in units/day. Demand is nonnegative, so the bounded
// families require a >= 0. A degenerate uniform (a == b) is allowed as a
// point mass; it makes exact deterministic simulator tests possible.

struct Uniform {
    double a = 0.0;  // lower bound
    double b = 0.0;  // upper bound
    bool operator==(const Uniform&) const = default;
};

struct Triangular {
    double a = 0.0;  // minimum
    double b = 0.0;  // maximum
    double c = 0.0;  // mode, a <= c <= b
    bool operator==(const Triangular&) const = default;
};

struct LogNormal {
    double mu = 0.0;     // mean of log(X)
    double sigma = 1.0;  // stdev of log(X), > 0
    bool operator==(const LogNormal&) const = default;
};

class DemandDistribution {
public:
    DemandDistribution() : rep_(Uniform{0.0, 0.0}) {}

    DemandDistribution(Uniform u) : rep_(u) {
        if (!(u.a >= 0.0) || !(u.a <= u.b))
            throw std::domain_error("uniform demand requires 0 <= a <= b");
    }
    DemandDistribution(Triangular t) : rep_(t) {
        if (!(t.a >= 0.0) || !(t.a <= t.c) || !(t.c <= t.b))
            throw std::domain_error("triangular demand requires 0 <= a <= c <= b");
    }
    DemandDistribution(LogNormal l) : rep_(l) {
        if (!(l.sigma > 0.0) || !std::isfinite(l.mu))
            throw std::domain_error("log-normal demand requires finite mu and sigma > 0");
    }

    // One day of demand. Uniform and triangular use the inverse transform of
    // their closed-form CDF; log-normal exponentiates a Gaussian draw.
    double sample(RandomStream& rng) const {
        return std::visit(
            [&rng](const auto& d) -> double {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, Uniform>) {
                    return d.a + rng.uniform01() * (d.b - d.a);
                } else if constexpr (std::is_same_v<T, Triangular>) {
                    if (d.b == d.a) return d.a;
                    const double u = rng.uniform01();
                    const double mode_cdf = (d.c - d.a) / (d.b - d.a);
                    if (u < mode_cdf) return d.a + std::sqrt(u * (d.b - d.a) * (d.c - d.a));
                    return d.b - std::sqrt((1.0 - u) * (d.b - d.a) * (d.b - d.c));
                } else {
                    return std::exp(d.mu + d.sigma * rng.normal01());
                }
            },
            rep_);
    }

    double mean() const {
        return std::visit(
            [](const auto& d) -> double {
                using T = std::decay_t<decltype(d)>;
                if constexpr (std::is_same_v<T, Uniform>) return (d.a + d.b) / 2.0;
                else if constexpr (std::is_same_v<T, Triangular>) return (d.a + d.b + d.c) / 3.0;
                else return std::exp(d.mu + d.sigma * d.sigma / 2.0);
            },
            rep_);
    }

    // Canonical text form, e.g. "uniform(a=235, b=810)". Used by config files
    // and as part of cache keys, so parameters print at full precision.
    std::string text() const;

    template <typename Visitor>
    decltype(auto) visit(Visitor&& v) const {
        return std::visit(std::forward<Visitor>(v), rep_);
    }

    bool operator==(const DemandDistribution&) const = default;

private:
    std::variant<Uniform, Triangular, LogNormal> rep_;
};

namespace detail {
inline std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace detail

inline std::string DemandDistribution::text() const {
    using detail::format_number;
    return visit([](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Uniform>)
            return "uniform(a=" + format_number(d.a) + ", b=" + format_number(d.b) + ")";
        else if constexpr (std::is_same_v<T, Triangular>)
            return "triangular(a=" + format_number(d.a) + ", b=" + format_number(d.b) +
                   ", c=" + format_number(d.c) + ")";
        else
            return "lognormal(mu=" + format_number(d.mu) + ", sigma=" + format_number(d.sigma) + ")";
    });
}

// Sample statistics of observed daily demand.
struct SampleMoments {
    double mean = 0.0;
    double stdev = 0.0;
};

// Log-normal parameters matching the sample mean m and stdev s:
//   mu = ln(m^2 / sqrt(m^2 + s^2)),  sigma = sqrt(ln(1 + s^2/m^2)).
inline LogNormal fit_lognormal(const SampleMoments& moments) {
    const double m = moments.mean;
    const double s = moments.stdev;
    if (!(m > 0.0) || !(s > 0.0))
        throw std::domain_error("log-normal fit requires mean > 0 and stdev > 0");
    const double mu = std::log(m * m / std::sqrt(m * m + s * s));
    const double sigma = std::sqrt(std::log(1.0 + (s * s) / (m * m)));
    return LogNormal{mu, sigma};
}

// Triangular on [a, b] whose mode is chosen so the distribution mean equals
// the sample mean: c = 3m - a - b.
inline Triangular fit_triangular_mode(double a, double b, const SampleMoments& moments) {
    if (!(a < b)) throw std::domain_error("triangular fit requires a < b");
    const double c = 3.0 * moments.mean - a - b;
    if (c < a || c > b)
        throw std::domain_error("triangular fit: implied mode falls outside [a, b]");
    return Triangular{a, b, c};
}

}  // namespace nvsim
