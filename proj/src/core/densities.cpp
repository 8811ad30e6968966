#include "dsl/densities.hpp"

#include <cmath>
#include <numbers>

#include "dsl/error.hpp"

namespace dsl {

namespace {

void require_lognormal(const DslParams& params) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "operation requires the lognormal branch");
    }
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::Domain, std::string(what) + " must be positive and finite");
    }
}

}  // namespace

double normal_pdf(double x, double mean, double variance) {
    const double d = x - mean;
    return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double log_joint_exponent(double y, double l, const DslParams& params) {
    const auto& [alpha, beta, p, q, s] = params;
    return -alpha * p * l * l + 2.0 * alpha * beta * p * l * y - beta * p * y * y + s * l + q * y;
}

double joint_pdf(double Y, double L, const DslParams& params, const ReferenceScales& scales) {
    require_positive(Y, "Y");
    require_positive(L, "L");
    const GaussianLogModel g = to_gaussian(params);
    return g.density(std::log(L / scales.L0), std::log(Y / scales.Y0)) / (Y * L);
}

LogQuadratic marginal_L_coefficients(const DslParams& params) {
    const auto& [alpha, beta, p, q, s] = params;
    return {-alpha * (1.0 - alpha * beta) * p, s + (q + 1.0) * alpha};
}

LogQuadratic marginal_Y_coefficients(const DslParams& params) {
    const auto& [alpha, beta, p, q, s] = params;
    return {-beta * (1.0 - alpha * beta) * p, q + (s + 1.0) * beta};
}

namespace {

// exp(quadratic x^2 + linear x) / X normalized over X > 0: a lognormal whose
// log has variance -1/(2 quadratic) and mean (linear + 1) * variance.
double lognormal_from_coefficients(double X, double x, LogQuadratic c) {
    const double var = -0.5 / c.quadratic;
    return normal_pdf(x, (c.linear + 1.0) * var, var) / X;
}

}  // namespace

double marginal_pdf_L(double L, const DslParams& params, const ReferenceScales& scales) {
    require_lognormal(params);
    require_positive(L, "L");
    return lognormal_from_coefficients(L, std::log(L / scales.L0), marginal_L_coefficients(params));
}

double marginal_pdf_Y(double Y, const DslParams& params, const ReferenceScales& scales) {
    require_lognormal(params);
    require_positive(Y, "Y");
    return lognormal_from_coefficients(Y, std::log(Y / scales.Y0), marginal_Y_coefficients(params));
}

namespace {

double pareto_pdf(double X, double X0, double mu) {
    if (X < X0) return 0.0;
    return mu / X0 * std::pow(X / X0, -mu - 1.0);
}

void require_powerlaw(const PowerLawParams& pl) {
    if (!(pl.mu_L > 0.0) || !(pl.mu_Y > 0.0)) {
        throw Error(ErrorCode::Domain, "Pareto exponents must be positive");
    }
}

}  // namespace

double marginal_pdf_L(double L, const PowerLawParams& params, const ReferenceScales& scales) {
    require_powerlaw(params);
    require_positive(L, "L");
    return pareto_pdf(L, scales.L0, params.mu_L);
}

double marginal_pdf_Y(double Y, const PowerLawParams& params, const ReferenceScales& scales) {
    require_powerlaw(params);
    require_positive(Y, "Y");
    return pareto_pdf(Y, scales.Y0, params.mu_Y);
}

double scaling_function_Y(double Y, const DslParams& params, const ReferenceScales& scales) {
    require_lognormal(params);
    require_positive(Y, "Y");
    return lognormal_from_coefficients(Y, std::log(Y / scales.Y0),
                                       {-params.beta * params.p, params.q});
}

double scaling_function_L(double L, const DslParams& params, const ReferenceScales& scales) {
    require_lognormal(params);
    require_positive(L, "L");
    return lognormal_from_coefficients(L, std::log(L / scales.L0),
                                       {-params.alpha * params.p, params.s});
}

double conditional_pdf_Y_given_L(double Y, double L, const DslParams& params,
                                 const ReferenceScales& scales) {
    require_positive(Y, "Y");
    require_positive(L, "L");
    const double shrink = std::pow(L / scales.L0, -params.alpha);
    return shrink * scaling_function_Y(shrink * Y, params, scales);
}

double conditional_pdf_L_given_Y(double L, double Y, const DslParams& params,
                                 const ReferenceScales& scales) {
    require_positive(L, "L");
    require_positive(Y, "Y");
    const double shrink = std::pow(Y / scales.Y0, -params.beta);
    return shrink * scaling_function_L(shrink * L, params, scales);
}

}  // namespace dsl
