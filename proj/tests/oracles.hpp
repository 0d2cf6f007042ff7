#pragma once

// Small self-contained reference implementations used to cross-check the
// library from the outside.  Deliberately written without reusing library
// internals: the bisection here is a plain interval halving, the normal
// quantile is Acklam's rational approximation, and the binomial pmf comes
// from the recurrence on binomial coefficients.

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "giantwalk/rng.hpp"

namespace oracles {

inline constexpr std::array<double, 7> kLambdaGrid = {1.01, 1.05, 1.1,
                                                      1.25, 1.5,  2.0, 3.0};

// Survival-equation root by plain bisection, independent of the library's
// bracketing and Newton polish.
inline double rho_bisect(double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("rho_bisect: lambda <= 1");
    auto g = [lambda](double r) { return 1.0 - r - std::exp(-lambda * r); };
    double lo = 1e-14;
    double hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Acklam's inverse normal CDF approximation, |rel err| < 1.2e-9.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("normal_quantile: p outside (0,1)");
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
                c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
                 c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
            a[5]) *
           q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Midpoint quantile grid: m points whose empirical distribution tracks the
// standard normal to O(1/m).
inline std::vector<double> normal_grid(std::size_t m) {
    std::vector<double> xs(m);
    for (std::size_t i = 0; i < m; ++i)
        xs[i] = normal_quantile((static_cast<double>(i) + 0.5) /
                                static_cast<double>(m));
    return xs;
}

inline std::vector<double> box_muller(giantwalk::RngStream& rng,
                                      std::size_t count) {
    std::vector<double> out;
    out.reserve(count + 1);
    while (out.size() < count) {
        const double u1 = 1.0 - rng.uniform();  // (0, 1]
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        out.push_back(r * std::cos(6.283185307179586476925286766559 * u2));
        out.push_back(r * std::sin(6.283185307179586476925286766559 * u2));
    }
    out.resize(count);
    return out;
}

// Exact Bin(m, p) pmf over k = 0..m via the coefficient recurrence; only
// meant for the modest m used in tests.
inline std::vector<double> binomial_pmf(int m, double p) {
    if (m < 0 || !(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("binomial_pmf: bad arguments");
    std::vector<double> pmf(static_cast<std::size_t>(m) + 1, 0.0);
    if (p == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p == 1.0) {
        pmf[static_cast<std::size_t>(m)] = 1.0;
        return pmf;
    }
    const double q = 1.0 - p;
    const double ratio = p / q;
    pmf[0] = std::pow(q, m);
    for (int k = 0; k + 1 <= m; ++k)
        pmf[static_cast<std::size_t>(k) + 1] = pmf[static_cast<std::size_t>(k)] *
                                               ratio * static_cast<double>(m - k) /
                                               static_cast<double>(k + 1);
    return pmf;
}

}  // namespace oracles
