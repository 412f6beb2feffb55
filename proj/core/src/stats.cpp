#include "hypcyl/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace hypcyl {

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& weights) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("linear_fit: need >= 3 points");
    if (!weights.empty() && weights.size() != x.size())
        throw std::invalid_argument("linear_fit: weight size mismatch");
    double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        sw += w;
        swx += w * x[i];
        swy += w * y[i];
        swxx += w * x[i] * x[i];
        swxy += w * x[i] * y[i];
    }
    const double det = sw * swxx - swx * swx;
    if (det <= 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
    LinearFit fit;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swxx * swy - swx * swxy) / det;
    if (weights.empty()) {
        // Residual-based standard error.
        double ss = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - fit.intercept - fit.slope * x[i];
            ss += r * r;
        }
        const double sigma2 = ss / static_cast<double>(x.size() - 2);
        fit.slope_se = std::sqrt(sigma2 * sw / det);
    } else {
        // Known per-point variances: Var(slope) = sw / det.
        fit.slope_se = std::sqrt(sw / det);
    }
    return fit;
}

}  // namespace hypcyl
