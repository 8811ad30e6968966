#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "dsl/estimator/collapse.hpp"

namespace dsl {

enum class PhiMethod { quadratic_log_density, gaussian_mle };

const char* method_name(PhiMethod m) noexcept;

// ln f(z) = c0 + c1 z + c2 z^2 for the density f of a log variable z.
struct LogDensityFit {
    PhiMethod method = PhiMethod::quadratic_log_density;
    std::array<double, 3> coeffs{};
    std::array<double, 3> se{};
    std::size_t n = 0;
    // Histogram the quadratic was fitted to (empty for the MLE).
    std::vector<double> edges;
    std::vector<double> density;

    double at(double z) const { return coeffs[0] + z * (coeffs[1] + z * coeffs[2]); }
};

// quadratic_log_density: weighted least squares of a quadratic to the log of
// an equal-width histogram, weights = bin counts, empty bins skipped.
// gaussian_mle: normal maximum likelihood, mapped to the same coefficients.
// Throws InsufficientData when fewer than 4 bins are occupied or the sample
// has no spread.
LogDensityFit fit_log_density(std::span<const double> sample, PhiMethod method, std::size_t bins = 60);

struct PhiFit {
    PhiMethod method = PhiMethod::quadratic_log_density;
    double p_hat = 0.0;
    double p_se = 0.0;
    double tilt_hat = 0.0;  // q for Phi_Y, s for Phi_L
    double tilt_se = 0.0;
    LogDensityFit log_density;
};

struct PhiFitOptions {
    std::size_t min_pooled = 500;
    std::size_t bins = 60;
};

// Fits the pooled scaled sample of a collapse. The log-density curvature is
// -exponent * p, where exponent is beta for Phi_Y and alpha for Phi_L; its
// standard error is propagated into p_se. The tilt of Phi in its own argument
// is the log-density slope minus one.
// Throws InsufficientData (pooled sample under min_pooled), NegativeCurvature
// (curvature >= 0), InvalidArgument (exponent <= 0).
PhiFit fit_phi(const CollapseResult& collapse, double exponent_hat, double exponent_se, PhiMethod method,
               const PhiFitOptions& options = {});

// Equal-weight, uncorrelated combination of two estimates.
struct Combined {
    double value = 0.0;
    double se = 0.0;
};
Combined combine_equal_weight(double a, double a_se, double b, double b_se);

}  // namespace dsl
