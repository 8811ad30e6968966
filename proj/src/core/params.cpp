#include "dsl/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dsl/error.hpp"

namespace dsl {

ReferenceScales ReferenceScales::make(double Y0, double L0) {
    if (!(std::isfinite(Y0) && Y0 > 0.0) || !(std::isfinite(L0) && L0 > 0.0)) {
        throw Error(ErrorCode::Domain, "reference scales must be positive and finite (Y0=" +
                                           std::to_string(Y0) + ", L0=" + std::to_string(L0) +
                                           ")");
    }
    return ReferenceScales{Y0, L0};
}

ReferenceScales default_scales() { return ReferenceScales{std::pow(10.0, 5.5), std::pow(10.0, 1.5)}; }

DslParams published_params() { return DslParams{1.037, 0.655, 0.698, 0.0, 0.0}; }

const char* branch_name(Branch b) noexcept {
    return b == Branch::lognormal ? "lognormal" : "power-law";
}

Branch validate_params(const DslParams& params) {
    const auto& [alpha, beta, p, q, s] = params;
    if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(p) || !std::isfinite(q) ||
        !std::isfinite(s)) {
        throw Error(ErrorCode::NonNormalizable, "parameters must be finite");
    }
    if (alpha <= 0.0 || beta <= 0.0) {
        throw Error(ErrorCode::NonNormalizable, "alpha and beta must be positive");
    }
    const double ab = alpha * beta;
    if (std::abs(ab - 1.0) <= kBranchEps) return Branch::power_law;
    if (ab > 1.0) {
        throw Error(ErrorCode::NonNormalizable,
                    "alpha*beta = " + std::to_string(ab) + " > 1: quadratic form is indefinite");
    }
    if (p <= 0.0) throw Error(ErrorCode::NonNormalizable, "p must be positive");
    return Branch::lognormal;
}

double GaussianLogModel::correlation() const { return sig_ly / std::sqrt(sig_ll * sig_yy); }

double GaussianLogModel::density(double l, double y) const {
    const double det = determinant();
    const double dl = l - mu_l;
    const double dy = y - mu_y;
    const double quad = (sig_yy * dl * dl - 2.0 * sig_ly * dl * dy + sig_ll * dy * dy) / det;
    return std::exp(-0.5 * quad) / (2.0 * std::numbers::pi * std::sqrt(det));
}

GaussianLogModel to_gaussian(const DslParams& params) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "power-law branch has no Gaussian form");
    }
    const auto& [alpha, beta, p, q, s] = params;
    // Inverse of [[2ap, -2abp], [-2abp, 2bp]], determinant 4 a b p^2 (1 - ab).
    const double k = 1.0 / (2.0 * p * (1.0 - alpha * beta));
    GaussianLogModel g;
    g.sig_ll = k / alpha;
    g.sig_ly = k;
    g.sig_yy = k / beta;
    g.mu_l = g.sig_ll * (s + 1.0) + g.sig_ly * (q + 1.0);
    g.mu_y = g.sig_ly * (s + 1.0) + g.sig_yy * (q + 1.0);
    return g;
}

PowerLawRelations powerlaw_relations(double mu_L, double mu_Y) {
    if (!(mu_L > 0.0) || !(mu_Y > 0.0) || !std::isfinite(mu_L) || !std::isfinite(mu_Y)) {
        throw Error(ErrorCode::Domain, "Pareto exponents must be positive");
    }
    return PowerLawRelations{mu_L / mu_Y, mu_Y / mu_L, -(mu_L + mu_Y + mu_L * mu_Y) / mu_Y};
}

}  // namespace dsl
