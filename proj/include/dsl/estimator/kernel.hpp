#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dsl/estimator/stats.hpp"

namespace dsl {

inline constexpr std::uint64_t kDefaultBootstrapSeed = 20060331;

struct KernelFit {
    std::vector<double> grid;
    std::vector<double> estimate;
    std::vector<double> ci_low;
    std::vector<double> ci_high;
    double bandwidth = 0.0;
    double r2 = 0.0;
};

struct KernelOptions {
    std::optional<double> bandwidth;  // default: 1.06 sd(x) n^(-1/5)
    std::size_t bootstrap = 200;
    std::uint64_t bootstrap_seed = kDefaultBootstrapSeed;
    double confidence = 0.95;
    std::optional<Interval> r2_range;  // restrict the goodness of fit to x in range
};

double rule_of_thumb_bandwidth(std::span<const double> x);

// Evenly spaced grid between the 2.5% and 97.5% quantiles of x.
std::vector<double> default_kernel_grid(std::span<const double> x, std::size_t points = 50);

// Nadaraya-Watson estimate of E(y|x) with a Gaussian kernel truncated at 7
// bandwidths. The band is the bootstrap percentile interval over case
// resamples, each evaluated on a 4096-point linear binning of x; replicate r
// draws from its own stream seeded by (bootstrap_seed, r). r2 is the squared
// Pearson correlation between fitted and observed y.
//
// Throws InsufficientData (< 30 pairs or a grid point with no data within
// reach of the kernel), DegenerateX (x has no variance), InvalidArgument.
KernelFit kernel_regression(std::span<const double> x, std::span<const double> y,
                            std::span<const double> grid, const KernelOptions& options = {});

}  // namespace dsl
