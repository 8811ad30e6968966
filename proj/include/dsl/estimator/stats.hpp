#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dsl {

// Closed interval in log units.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double v) const noexcept { return v >= lo && v <= hi; }
    double width() const noexcept { return hi - lo; }
};

double mean(std::span<const double> v);

// Unbiased (n - 1) variance; zero for fewer than two values.
double variance(std::span<const double> v);

// Squared Pearson correlation; zero when either side has no variance.
double squared_correlation(std::span<const double> a, std::span<const double> b);

// Order-statistic quantile of sorted data: element round(prob * (n - 1)).
// Picking an actual sample keeps range selection exact under shifts.
double order_quantile(std::span<const double> sorted, double prob);

// Linearly interpolated (type 7) quantile of sorted data.
double interpolated_quantile(std::span<const double> sorted, double prob);

// Interval between the order-statistic quantiles (1 -/+ coverage)/2.
Interval central_interval(std::span<const double> v, double coverage);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b| of sorted samples.
double ks_distance_sorted(std::span<const double> a, std::span<const double> b);
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace dsl
