#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

// Shared test-side oracles. These deliberately avoid the closed forms used
// by the library so agreement is meaningful.

namespace testutil {

/// Golden-section minimization of a unimodal function on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         int iterations = 160) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iterations; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return f(0.5 * (a + b));
}

/// Zooming grid minimization of f(t, s) over [-range, range]^2.
inline double grid_min_2d(const std::function<double(double, double)>& f, double range,
                          int pts = 81, int zooms = 5) {
    double tc = 0.0, sc = 0.0, half = range;
    double best = f(0.0, 0.0);
    for (int z = 0; z < zooms; ++z) {
        double bt = tc, bs = sc;
        for (int i = 0; i < pts; ++i) {
            const double t = tc - half + 2.0 * half * i / (pts - 1);
            for (int j = 0; j < pts; ++j) {
                const double s = sc - half + 2.0 * half * j / (pts - 1);
                const double v = f(t, s);
                if (v < best) {
                    best = v;
                    bt = t;
                    bs = s;
                }
            }
        }
        tc = bt;
        sc = bs;
        half *= 2.5 / (pts - 1);
    }
    return best;
}

/// Kolmogorov-Smirnov statistic of samples against an analytic CDF.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double c = cdf(samples[i]);
        d = std::max(d, std::fabs(c - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - c));
    }
    return d;
}

/// Asymptotic KS critical value at level alpha.
inline double ks_critical(std::size_t n, double alpha) {
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

}  // namespace testutil
