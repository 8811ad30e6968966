#pragma once

#include <cstddef>
#include <span>

#include "dsl/estimator/stats.hpp"

namespace dsl {

struct RegressionFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
    double intercept_se = 0.0;
    double r2 = 0.0;
    Interval fit_range;
    std::size_t n_used = 0;
};

// Ordinary least squares of y on x over the pairs with x inside fit_range,
// with the classical standard errors. Throws InsufficientData (< 3 pairs in
// range) or DegenerateX.
RegressionFit linear_fit(std::span<const double> x, std::span<const double> y, Interval fit_range);

// Same over the full range of x.
RegressionFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace dsl
