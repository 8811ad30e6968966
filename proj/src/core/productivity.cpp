#include "dsl/productivity.hpp"

#include <cmath>

#include "dsl/densities.hpp"
#include "dsl/error.hpp"

namespace dsl {

namespace {

// alpha + beta - 2 alpha beta; strictly positive on the lognormal branch.
double productivity_denominator(const DslParams& params) {
    return params.alpha + params.beta - 2.0 * params.alpha * params.beta;
}

void require_regular(const DslParams& params) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "productivity law requires the lognormal branch");
    }
    if (std::abs(params.alpha - 1.0) <= kSingularEps) {
        throw Error(ErrorCode::SingularProductivity, "alpha = 1 degenerates the tilde map");
    }
    if (std::abs(productivity_denominator(params)) <= kSingularEps) {
        throw Error(ErrorCode::SingularProductivity, "alpha + beta - 2 alpha beta = 0");
    }
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorCode::Domain, std::string(what) + " must be positive and finite");
    }
}

}  // namespace

ProductivityParams derive_productivity(const DslParams& params) {
    require_regular(params);
    const auto& [alpha, beta, p, q, s] = params;
    const double d = productivity_denominator(params);

    ProductivityParams out;
    out.alpha_t = alpha - 1.0;
    out.beta_t = beta * (alpha - 1.0) / d;
    out.p_t = d * p / (alpha - 1.0);
    out.gamma1 = alpha * beta * (1.0 - alpha * beta) * p / d;

    // No closed form is printed for the linear coefficients; read them off the
    // Gaussian law of (l, c), undoing the 1/C (resp. 1/u) Jacobian.
    const GaussianLogModel g = to_gaussian(params);
    out.gamma2 = g.mu_c() / g.var_c() - 1.0;
    const double slope = g.cov_lc() / g.var_c();
    const double var_l_given_c = g.sig_ll - g.cov_lc() * slope;
    const double mean_l_at_c0 = g.mu_l - slope * g.mu_c();
    out.q_t = mean_l_at_c0 / var_l_given_c - 1.0;
    return out;
}

double productivity_joint_pdf(double C, double L, const DslParams& params,
                              const ReferenceScales& scales) {
    require_positive(C, "C");
    require_positive(L, "L");
    return L * joint_pdf(C * L, L, params, scales);
}

double marginal_pdf_C(double C, const DslParams& params, const ReferenceScales& scales) {
    require_regular(params);
    require_positive(C, "C");
    const ProductivityParams pp = derive_productivity(params);
    const double var = 0.5 / pp.gamma1;
    return normal_pdf(std::log(C / scales.C0()), (pp.gamma2 + 1.0) * var, var) / C;
}

double productivity_slope(const DslParams& params) { return derive_productivity(params).beta_t; }

namespace {

// Law of l given c: mean beta_t c + offset, variance 1/(2 alpha_t p_t).
struct LaborGivenProductivity {
    double slope;
    double offset;
    double variance;
};

LaborGivenProductivity labor_given_productivity(const DslParams& params) {
    const ProductivityParams pp = derive_productivity(params);
    const double curvature = pp.alpha_t * pp.p_t;  // (alpha + beta - 2 alpha beta) p
    const double variance = 0.5 / curvature;
    return {pp.beta_t, (params.s + params.q + 2.0) * variance, variance};
}

}  // namespace

double expected_L_given_C(double C, const DslParams& params, const ReferenceScales& scales) {
    require_positive(C, "C");
    const auto law = labor_given_productivity(params);
    const double c = std::log(C / scales.C0());
    return scales.L0 * std::exp(law.slope * c + law.offset + 0.5 * law.variance);
}

double psi_L(double u, const DslParams& params, const ReferenceScales& scales) {
    require_positive(u, "u");
    const auto law = labor_given_productivity(params);
    return normal_pdf(std::log(u / scales.L0), law.offset, law.variance) / u;
}

double conditional_pdf_L_given_C(double L, double C, const DslParams& params,
                                 const ReferenceScales& scales) {
    require_positive(L, "L");
    require_positive(C, "C");
    const double shrink = std::pow(C / scales.C0(), -productivity_slope(params));
    return shrink * psi_L(shrink * L, params, scales);
}

}  // namespace dsl
