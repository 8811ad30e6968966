#include "dsl/verify/identities.hpp"

#include <algorithm>
#include <cmath>

#include "dsl/densities.hpp"
#include "dsl/error.hpp"
#include "dsl/verify/feq.hpp"
#include "dsl/verify/phi_grid.hpp"

namespace dsl {

namespace {

constexpr double kPowerLawTolerance = 1e-12;
constexpr double kPowerLawFeqTolerance = 1e-8;

void add(IdentityLedger& ledger, std::string name, double lhs, double rhs, double tol = kIdentityTolerance) {
    IdentityCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    c.rel_error = scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
    c.tolerance = tol;
    c.pass = std::isfinite(c.rel_error) && c.rel_error <= tol;
    ledger.checks.push_back(std::move(c));
}

// Covariance and mean of (l, y) by inverting the joint precision matrix.
struct Moments {
    double sll, sly, syy, ml, my;
};

Moments invert_precision(const DslParams& P) {
    const double a = 2.0 * P.alpha * P.p;
    const double b = -2.0 * P.alpha * P.beta * P.p;
    const double d = 2.0 * P.beta * P.p;
    const double det = a * d - b * b;
    Moments m{d / det, -b / det, a / det, 0.0, 0.0};
    m.ml = m.sll * (P.s + 1.0) + m.sly * (P.q + 1.0);
    m.my = m.sly * (P.s + 1.0) + m.syy * (P.q + 1.0);
    return m;
}

void lognormal_checks(IdentityLedger& ledger, const DslParams& P, const ProductivityParams* prod) {
    const Moments m = invert_precision(P);
    const double ab = P.alpha * P.beta;

    add(ledger, "correlation", m.sly / std::sqrt(m.sll * m.syy), std::sqrt(ab));
    add(ledger, "var_y_given_l", m.syy - m.sly * m.sly / m.sll, 1.0 / (2.0 * P.beta * P.p));
    add(ledger, "var_l_given_y", m.sll - m.sly * m.sly / m.syy, 1.0 / (2.0 * P.alpha * P.p));
    add(ledger, "slope_y_on_l", m.sly / m.sll, P.alpha);
    add(ledger, "slope_l_on_y", m.sly / m.syy, P.beta);

    // Log-quadratic marginals: density in L is exp(c2 l^2 + c1 l) up to a constant.
    const auto cl = marginal_L_coefficients(P);
    const auto cy = marginal_Y_coefficients(P);
    add(ledger, "marginal_L_quadratic", -0.5 / m.sll, cl.quadratic);
    add(ledger, "marginal_L_linear", m.ml / m.sll - 1.0, cl.linear);
    add(ledger, "marginal_Y_quadratic", -0.5 / m.syy, cy.quadratic);
    add(ledger, "marginal_Y_linear", m.my / m.syy - 1.0, cy.linear);
    add(ledger, "marginal_L_closed_form", cl.quadratic, -P.alpha * (1.0 - ab) * P.p);
    add(ledger, "marginal_L_tilt_closed_form", cl.linear, P.s + (P.q + 1.0) * P.alpha);
    add(ledger, "marginal_Y_closed_form", cy.quadratic, -P.beta * (1.0 - ab) * P.p);
    add(ledger, "marginal_Y_tilt_closed_form", cy.linear, P.q + (P.s + 1.0) * P.beta);

    if (prod) {
        const double var_c = m.syy + m.sll - 2.0 * m.sly;
        const double cov_lc = m.sly - m.sll;
        const double mu_c = m.my - m.ml;
        const double d = P.alpha + P.beta - 2.0 * ab;
        add(ledger, "alpha_t", prod->alpha_t, P.alpha - 1.0);
        add(ledger, "gamma1", 1.0 / (2.0 * var_c), prod->gamma1);
        add(ledger, "beta_t", cov_lc / var_c, prod->beta_t);
        add(ledger, "alpha_t_p_t", prod->alpha_t * prod->p_t, d * P.p);
        add(ledger, "var_l_given_c", m.sll - cov_lc * cov_lc / var_c, 1.0 / (2.0 * prod->alpha_t * prod->p_t));
        add(ledger, "gamma2", mu_c / var_c - 1.0, prod->gamma2);
        add(ledger, "tilde_gamma1", prod->beta_t * prod->p_t * (1.0 - prod->alpha_t * prod->beta_t), 1.0 / (2.0 * var_c));
    }

    // Approaching alpha beta = 1 the marginal curvatures vanish like (1 - alpha beta).
    for (int k = 2; k <= 6; ++k) {
        DslParams near = P;
        near.beta = (1.0 - std::pow(10.0, -k)) / P.alpha;
        const double gap = 1.0 - near.alpha * near.beta;
        const auto g = to_gaussian(near);
        const std::string tag = "limit_1e-" + std::to_string(k);
        add(ledger, tag + "_marginal_L_quadratic", -0.5 / g.sig_ll / gap, -near.alpha * near.p);
        add(ledger, tag + "_marginal_Y_quadratic", -0.5 / g.sig_yy / gap, -near.beta * near.p);
    }
}

}  // namespace

bool IdentityLedger::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.pass; });
}

const IdentityCheck* IdentityLedger::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

IdentityLedger identity_suite(const DslParams& params) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "identity suite needs the lognormal branch");
    }
    IdentityLedger ledger;
    try {
        const auto prod = derive_productivity(params);
        lognormal_checks(ledger, params, &prod);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularProductivity) throw;
        lognormal_checks(ledger, params, nullptr);
    }
    return ledger;
}

IdentityLedger identity_suite(const DslParams& params, const ProductivityParams& productivity) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "identity suite needs the lognormal branch");
    }
    IdentityLedger ledger;
    lognormal_checks(ledger, params, &productivity);
    return ledger;
}

IdentityLedger powerlaw_identity_suite(const PowerLawParams& params, const ReferenceScales& scales) {
    const auto rel = powerlaw_relations(params);
    const double mL = params.mu_L, mY = params.mu_Y;
    IdentityLedger ledger;
    add(ledger, "alpha", rel.alpha, mL / mY, kPowerLawTolerance);
    add(ledger, "beta", rel.beta, mY / mL, kPowerLawTolerance);
    add(ledger, "alpha_beta_product", rel.alpha * rel.beta, 1.0, kPowerLawTolerance);
    add(ledger, "a", rel.a, -mL / mY - 1.0 - mL, kPowerLawTolerance);

    // An arbitrary smooth Phi_Y and its companion Phi_L.
    ScalingFunction phi_Y{[Y0 = scales.Y0](double Y) {
        const double y = std::log(Y / Y0);
        return std::exp(-0.3 * y * y) * (1.0 + 0.3 * std::sin(2.0 * y)) / Y;
    }};
    const auto phi_L = powerlaw_phi_L(phi_Y, rel.alpha, rel.a, scales);

    // Marginal tails implied by the scaling functions.
    const double L = std::exp(1.0) * scales.L0;
    const double pl = std::pow(L / scales.L0, rel.alpha) * phi_L(L) / phi_L(scales.L0) * phi_Y(scales.Y0) /
                      phi_Y(std::pow(L / scales.L0, -rel.alpha) * scales.Y0);
    add(ledger, "marginal_L_exponent", std::log(pl), -mL - 1.0, kIdentityTolerance);
    const double Y = std::exp(1.0) * scales.Y0;
    const double py = std::pow(Y / scales.Y0, rel.beta) * phi_Y(Y) / phi_Y(scales.Y0) * phi_L(scales.L0) /
                      phi_L(std::pow(Y / scales.Y0, -rel.beta) * scales.L0);
    add(ledger, "marginal_Y_exponent", std::log(py), -mY - 1.0, kIdentityTolerance);

    const auto report = feq_residual(phi_Y, phi_L, rel.alpha, rel.beta, scales, EvalGrid::around(scales));
    IdentityCheck feq;
    feq.name = "functional_equation";
    feq.lhs = report.max_relative;
    feq.rhs = 0.0;
    feq.rel_error = report.max_relative;
    feq.tolerance = kPowerLawFeqTolerance;
    feq.pass = report.max_relative < kPowerLawFeqTolerance;
    ledger.checks.push_back(feq);
    return ledger;
}

}  // namespace dsl
