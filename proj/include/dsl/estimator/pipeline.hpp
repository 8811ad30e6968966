#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsl/estimator/collapse.hpp"
#include "dsl/estimator/histogram.hpp"
#include "dsl/estimator/kernel.hpp"
#include "dsl/estimator/phi_fit.hpp"
#include "dsl/estimator/regression.hpp"
#include "dsl/firm_table.hpp"

namespace dsl {

// Ranges are in the log variables l = ln(L/L0), y = ln(Y/Y0), c = ln(C/C0).
// Unset ranges default to the central `default_coverage` quantile interval of
// the conditioning variable (the full range for c).
struct EstimateConfig {
    std::optional<Interval> l_range;
    std::optional<Interval> y_range;
    std::optional<Interval> c_range;
    double default_coverage = 0.8;

    std::size_t conditioning_bins = 8;
    std::size_t response_bins = 40;
    std::size_t min_bin_count = 50;
    std::size_t min_pooled = 500;
    std::size_t phi_bins = 60;

    std::optional<double> bandwidth;
    std::size_t bootstrap = 200;
    std::uint64_t bootstrap_seed = kDefaultBootstrapSeed;
    std::size_t kernel_grid_points = 50;
};

inline constexpr std::size_t kMinEstimateRecords = 1000;

struct EstimateResult {
    Interval l_range;
    Interval y_range;

    RegressionFit alpha_fit;  // E(y|l) over l_range
    RegressionFit beta_fit;   // E(l|y) over y_range
    KernelFit kernel_y_on_l;  // r2 over l_range
    KernelFit kernel_l_on_y;  // r2 over y_range

    HistogramSet histograms_y_given_l;
    HistogramSet histograms_l_given_y;
    CollapseResult collapse_y;  // y - alpha_hat l, conditioned on l
    CollapseResult collapse_l;  // l - beta_hat y, conditioned on y

    PhiFit phi_y;      // quadratic log-density route
    PhiFit phi_l;
    PhiFit phi_y_mle;  // cross-check
    PhiFit phi_l_mle;
    Combined p;        // equal-weight combination of phi_y and phi_l
    Combined p_mle;
};

// The full exponent pipeline: linear and kernel regressions in both
// orientations, conditional histograms, scaling collapse of P(Y|L) and
// P(L|Y), and lognormal fits of both scaling functions. Deterministic given
// the table and config. Throws InsufficientData under kMinEstimateRecords
// records, DegenerateX when L or Y is constant, and propagates stage errors.
EstimateResult estimate_all(const FirmTable& table, const EstimateConfig& config = {});

struct ProductivityEstimate {
    Interval c_range;
    RegressionFit slope_fit;  // E(l|c); slope estimates beta_t
    KernelFit kernel_l_on_c;
    double gamma1_hat = 0.0;  // 1 / (2 Var(c))
    double gamma1_se = 0.0;
    double mean_c = 0.0;
    double mean_l = 0.0;
    CollapseResult collapse;  // l - beta_t_hat c, conditioned on c
    std::optional<LogDensityFit> psi_fit;  // absent when the scaled labor has no spread
    std::vector<std::string> warnings;
};

ProductivityEstimate estimate_productivity(const FirmTable& table, const EstimateConfig& config = {});

}  // namespace dsl
