#pragma once

#include <vector>

namespace hypcyl {

/// Weighted least-squares line y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};

/// weights = 1/variance per point; empty weights mean equal weighting.
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                     const std::vector<double>& weights = {});

}  // namespace hypcyl
