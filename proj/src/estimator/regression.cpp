#include "dsl/estimator/regression.hpp"

#include <algorithm>
#include <cmath>

#include "dsl/error.hpp"

namespace dsl {

RegressionFit linear_fit(std::span<const double> x, std::span<const double> y, Interval fit_range) {
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "x and y differ in length");

    std::size_t n = 0;
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!fit_range.contains(x[i])) continue;
        ++n;
        sx += x[i];
        sy += y[i];
    }
    if (n < 3) throw Error(ErrorCode::InsufficientData, "fewer than 3 pairs inside the fit range");
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!fit_range.contains(x[i])) continue;
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw Error(ErrorCode::DegenerateX, "x has zero variance inside the fit range");

    RegressionFit fit;
    fit.fit_range = fit_range;
    fit.n_used = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!fit_range.contains(x[i])) continue;
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        ssr += r * r;
    }
    const double s2 = ssr / static_cast<double>(n - 2);
    fit.slope_se = std::sqrt(s2 / sxx);
    fit.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
    fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 0.0;
    return fit;
}

RegressionFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.empty()) throw Error(ErrorCode::InsufficientData, "empty sample");
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    return linear_fit(x, y, Interval{*lo, *hi});
}

}  // namespace dsl
