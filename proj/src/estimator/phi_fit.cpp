#include "dsl/estimator/phi_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "dsl/error.hpp"

namespace dsl {

const char* method_name(PhiMethod m) noexcept {
    return m == PhiMethod::quadratic_log_density ? "quadratic-log-density" : "gaussian-mle";
}

namespace {

LogDensityFit fit_gaussian_mle(std::span<const double> sample) {
    const double n = static_cast<double>(sample.size());
    const double m = mean(sample);
    double ss = 0.0;
    for (double z : sample) ss += (z - m) * (z - m);
    const double v = ss / n;
    if (!(v > 0.0)) throw Error(ErrorCode::InsufficientData, "sample has no spread");

    LogDensityFit fit;
    fit.method = PhiMethod::gaussian_mle;
    fit.n = sample.size();
    fit.coeffs = {-0.5 * m * m / v - 0.5 * std::log(2.0 * std::numbers::pi * v), m / v, -0.5 / v};
    // Asymptotic variances: var(m) = v/n, var(v) = 2 v^2 / n, independent.
    fit.se[2] = 0.5 / v * std::sqrt(2.0 / n);
    fit.se[1] = std::sqrt(1.0 / (v * n) + 2.0 * m * m / (v * v * n));
    fit.se[0] = std::sqrt(m * m / (v * n) + std::pow(0.5 * m * m / v - 0.5, 2) * 2.0 / n);
    return fit;
}

LogDensityFit fit_quadratic(std::span<const double> sample, std::size_t bins) {
    if (bins < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 histogram bins");
    const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
    const double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) throw Error(ErrorCode::InsufficientData, "sample has no spread");

    const Interval range{lo, hi};
    const double width = range.width() / static_cast<double>(bins);
    std::vector<double> counts(bins, 0.0);
    const double scale = static_cast<double>(bins) / range.width();
    for (double z : sample) {
        counts[std::min(static_cast<std::size_t>((z - lo) * scale), bins - 1)] += 1.0;
    }

    LogDensityFit fit;
    fit.method = PhiMethod::quadratic_log_density;
    fit.n = sample.size();
    fit.edges.resize(bins + 1);
    for (std::size_t k = 0; k <= bins; ++k) fit.edges[k] = lo + width * static_cast<double>(k);
    fit.edges.back() = hi;
    const double n = static_cast<double>(sample.size());
    for (std::size_t k = 0; k < bins; ++k) fit.density.push_back(counts[k] / (n * width));

    // Center the abscissa for conditioning, then map back.
    const double center = mean(sample);
    std::vector<std::size_t> used;
    for (std::size_t k = 0; k < bins; ++k) {
        if (counts[k] > 0.0) used.push_back(k);
    }
    if (used.size() < 4) throw Error(ErrorCode::InsufficientData, "fewer than 4 occupied bins");

    const auto m = static_cast<Eigen::Index>(used.size());
    Eigen::MatrixXd X(m, 3);
    Eigen::VectorXd t(m), w(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        const std::size_t k = used[static_cast<std::size_t>(r)];
        const double u = 0.5 * (fit.edges[k] + fit.edges[k + 1]) - center;
        X(r, 0) = 1.0;
        X(r, 1) = u;
        X(r, 2) = u * u;
        t(r) = std::log(fit.density[k]);
        w(r) = counts[k];
    }
    const Eigen::MatrixXd XtW = X.transpose() * w.asDiagonal();
    const Eigen::Matrix3d normal = XtW * X;
    const Eigen::LDLT<Eigen::Matrix3d> ldlt(normal);
    const Eigen::Vector3d a = ldlt.solve(XtW * t);
    const Eigen::VectorXd resid = t - X * a;
    const double dof = static_cast<double>(m - 3);
    const double sigma2 = dof > 0 ? resid.cwiseProduct(resid).dot(w) / dof : 0.0;
    const Eigen::Matrix3d cov = sigma2 * ldlt.solve(Eigen::Matrix3d::Identity());

    // c(z) = a0 + a1 (z - z0) + a2 (z - z0)^2
    Eigen::Matrix3d J;
    J << 1.0, -center, center * center,
         0.0, 1.0, -2.0 * center,
         0.0, 0.0, 1.0;
    const Eigen::Vector3d c = J * a;
    const Eigen::Matrix3d cc = J * cov * J.transpose();
    for (int i = 0; i < 3; ++i) {
        fit.coeffs[static_cast<std::size_t>(i)] = c(i);
        fit.se[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, cc(i, i)));
    }
    return fit;
}

}  // namespace

LogDensityFit fit_log_density(std::span<const double> sample, PhiMethod method, std::size_t bins) {
    if (sample.size() < 2) throw Error(ErrorCode::InsufficientData, "log-density fit needs a sample");
    return method == PhiMethod::gaussian_mle ? fit_gaussian_mle(sample) : fit_quadratic(sample, bins);
}

PhiFit fit_phi(const CollapseResult& collapse, double exponent_hat, double exponent_se, PhiMethod method,
               const PhiFitOptions& options) {
    if (collapse.pooled.size() < options.min_pooled) {
        throw Error(ErrorCode::InsufficientData, "pooled scaled sample has " + std::to_string(collapse.pooled.size()) +
                                                     " < " + std::to_string(options.min_pooled) + " values");
    }
    if (!(exponent_hat > 0.0)) throw Error(ErrorCode::InvalidArgument, "scaling exponent must be positive");

    PhiFit fit;
    fit.method = method;
    fit.log_density = fit_log_density(collapse.pooled, method, options.bins);
    const double curvature = fit.log_density.coeffs[2];
    if (!(curvature < 0.0)) {
        throw Error(ErrorCode::NegativeCurvature, "log density is not concave (curvature " + std::to_string(curvature) + ")");
    }
    fit.p_hat = -curvature / exponent_hat;
    const double rel_c = fit.log_density.se[2] / curvature;
    const double rel_e = exponent_se / exponent_hat;
    fit.p_se = std::abs(fit.p_hat) * std::sqrt(rel_c * rel_c + rel_e * rel_e);
    fit.tilt_hat = fit.log_density.coeffs[1] - 1.0;
    fit.tilt_se = fit.log_density.se[1];
    return fit;
}

Combined combine_equal_weight(double a, double a_se, double b, double b_se) {
    return {0.5 * (a + b), 0.5 * std::sqrt(a_se * a_se + b_se * b_se)};
}

}  // namespace dsl
