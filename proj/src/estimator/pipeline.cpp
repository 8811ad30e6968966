#include "dsl/estimator/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "dsl/error.hpp"

namespace dsl {

namespace {

void require_size(const FirmTable& table) {
    if (table.size() < kMinEstimateRecords) {
        throw Error(ErrorCode::InsufficientData, "estimation needs at least " + std::to_string(kMinEstimateRecords) +
                                                     " records, got " + std::to_string(table.size()));
    }
}

bool constant(std::span<const double> v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
}

KernelOptions kernel_options(const EstimateConfig& config, Interval r2_range) {
    KernelOptions k;
    k.bandwidth = config.bandwidth;
    k.bootstrap = config.bootstrap;
    k.bootstrap_seed = config.bootstrap_seed;
    k.r2_range = r2_range;
    return k;
}

BinSpec bin_spec(const EstimateConfig& config, Interval range) {
    return BinSpec{range, config.conditioning_bins, config.response_bins, config.min_bin_count};
}

}  // namespace

EstimateResult estimate_all(const FirmTable& table, const EstimateConfig& config) {
    require_size(table);
    const auto l = table.log_l();
    const auto y = table.log_y();
    if (constant(l)) throw Error(ErrorCode::DegenerateX, "labor is constant");
    if (constant(y)) throw Error(ErrorCode::DegenerateX, "sales are constant");

    EstimateResult r;
    r.l_range = config.l_range.value_or(central_interval(l, config.default_coverage));
    r.y_range = config.y_range.value_or(central_interval(y, config.default_coverage));

    r.alpha_fit = linear_fit(l, y, r.l_range);
    r.beta_fit = linear_fit(y, l, r.y_range);
    r.kernel_y_on_l = kernel_regression(l, y, default_kernel_grid(l, config.kernel_grid_points),
                                        kernel_options(config, r.l_range));
    r.kernel_l_on_y = kernel_regression(y, l, default_kernel_grid(y, config.kernel_grid_points),
                                        kernel_options(config, r.y_range));

    r.histograms_y_given_l = conditional_histograms(l, y, bin_spec(config, r.l_range));
    r.histograms_l_given_y = conditional_histograms(y, l, bin_spec(config, r.y_range));
    r.collapse_y = scaling_collapse(table, r.alpha_fit.slope, Axis::y_given_l, bin_spec(config, r.l_range));
    r.collapse_l = scaling_collapse(table, r.beta_fit.slope, Axis::l_given_y, bin_spec(config, r.y_range));

    const PhiFitOptions phi{config.min_pooled, config.phi_bins};
    const auto& a = r.alpha_fit;
    const auto& b = r.beta_fit;
    r.phi_y = fit_phi(r.collapse_y, b.slope, b.slope_se, PhiMethod::quadratic_log_density, phi);
    r.phi_l = fit_phi(r.collapse_l, a.slope, a.slope_se, PhiMethod::quadratic_log_density, phi);
    r.phi_y_mle = fit_phi(r.collapse_y, b.slope, b.slope_se, PhiMethod::gaussian_mle, phi);
    r.phi_l_mle = fit_phi(r.collapse_l, a.slope, a.slope_se, PhiMethod::gaussian_mle, phi);
    r.p = combine_equal_weight(r.phi_y.p_hat, r.phi_y.p_se, r.phi_l.p_hat, r.phi_l.p_se);
    r.p_mle = combine_equal_weight(r.phi_y_mle.p_hat, r.phi_y_mle.p_se, r.phi_l_mle.p_hat, r.phi_l_mle.p_se);
    return r;
}

ProductivityEstimate estimate_productivity(const FirmTable& table, const EstimateConfig& config) {
    require_size(table);
    const auto c = table.log_c();
    const auto l = table.log_l();

    ProductivityEstimate r;
    if (config.c_range) {
        r.c_range = *config.c_range;
    } else {
        const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
        r.c_range = {*lo, *hi};
    }
    if (constant(l)) r.warnings.push_back("labor has zero variance; E(l|c) is flat");

    r.slope_fit = linear_fit(c, l, r.c_range);
    r.kernel_l_on_c = kernel_regression(c, l, default_kernel_grid(c, config.kernel_grid_points),
                                        kernel_options(config, r.c_range));

    const double var_c = variance(c);
    if (!(var_c > 0.0)) throw Error(ErrorCode::DegenerateX, "log productivity has zero variance");
    const double n = static_cast<double>(c.size());
    r.gamma1_hat = 0.5 / var_c;
    r.gamma1_se = r.gamma1_hat * std::sqrt(2.0 / (n - 1.0));
    r.mean_c = mean(c);
    r.mean_l = mean(l);

    r.collapse = scaling_collapse(table, r.slope_fit.slope, Axis::l_given_c,
                                  bin_spec(config, central_interval(c, config.default_coverage)));
    try {
        r.psi_fit = fit_log_density(r.collapse.pooled, PhiMethod::quadratic_log_density, config.phi_bins);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientData) throw;
        r.warnings.push_back(std::string("scaling function of P(L|C) not fitted: ") + e.what());
    }
    return r;
}

}  // namespace dsl
