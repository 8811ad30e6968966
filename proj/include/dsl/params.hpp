#pragma once

// Parameter types of the double scaling law and the Gaussian form of its
// lognormal solution in the log variables y = ln(Y/Y0), l = ln(L/L0).

namespace dsl {

// Branch / singularity thresholds on alpha*beta - 1 and on the productivity
// denominators.
inline constexpr double kBranchEps = 1e-9;
inline constexpr double kSingularEps = 1e-9;

struct ReferenceScales {
    double Y0 = 0.0;  // sales scale
    double L0 = 0.0;  // labor scale

    // Throws Domain unless both scales are positive and finite.
    static ReferenceScales make(double Y0, double L0);

    double C0() const noexcept { return Y0 / L0; }
};

// Mid-range defaults of the empirical scaling region: L0 = 10^1.5, Y0 = 10^5.5.
ReferenceScales default_scales();

struct DslParams {
    double alpha = 0.0;
    double beta = 0.0;
    double p = 0.0;  // log-quadratic curvature
    double q = 0.0;  // log-linear tilt of Phi_Y
    double s = 0.0;  // log-linear tilt of Phi_L
};

// alpha = 1.037, beta = 0.655, p = 0.698 (combined estimate), q = s = 0.
DslParams published_params();

enum class Branch { lognormal, power_law };

const char* branch_name(Branch b) noexcept;

// Classifies the parameter set; throws NonNormalizable when it is neither a
// normalizable lognormal (alpha, beta, p > 0, alpha*beta < 1) nor on the
// alpha*beta = 1 line.
Branch validate_params(const DslParams& params);

// Bivariate normal law of (l, y). Entries are indexed (l, y).
struct GaussianLogModel {
    double mu_l = 0.0;
    double mu_y = 0.0;
    double sig_ll = 0.0;
    double sig_ly = 0.0;
    double sig_yy = 0.0;

    double determinant() const noexcept { return sig_ll * sig_yy - sig_ly * sig_ly; }
    double correlation() const;

    double var_y_given_l() const noexcept { return sig_yy - sig_ly * sig_ly / sig_ll; }
    double var_l_given_y() const noexcept { return sig_ll - sig_ly * sig_ly / sig_yy; }
    double slope_y_on_l() const noexcept { return sig_ly / sig_ll; }
    double slope_l_on_y() const noexcept { return sig_ly / sig_yy; }

    // Log productivity c = y - l.
    double mu_c() const noexcept { return mu_y - mu_l; }
    double var_c() const noexcept { return sig_yy + sig_ll - 2.0 * sig_ly; }
    double cov_lc() const noexcept { return sig_ly - sig_ll; }

    // Normalized density of (l, y) w.r.t. dl dy.
    double density(double l, double y) const;
};

// Requires the lognormal branch. The density of (Y, L) is
// exp(-a p l^2 + 2 a b p l y - b p y^2 + s l + q y) up to normalization; in
// (l, y) the Jacobian Y*L adds one to each linear coefficient, so the
// precision matrix is [[2ap, -2abp], [-2abp, 2bp]] and the linear term is
// (s + 1, q + 1).
GaussianLogModel to_gaussian(const DslParams& params);

struct PowerLawParams {
    double mu_L = 0.0;  // P_L(L) ~ L^(-mu_L - 1)
    double mu_Y = 0.0;  // P_Y(Y) ~ Y^(-mu_Y - 1)
};

struct PowerLawRelations {
    double alpha = 0.0;
    double beta = 0.0;
    double a = 0.0;  // exponent tying Phi_L to Phi_Y
};

PowerLawRelations powerlaw_relations(double mu_L, double mu_Y);
inline PowerLawRelations powerlaw_relations(const PowerLawParams& pl) {
    return powerlaw_relations(pl.mu_L, pl.mu_Y);
}

}  // namespace dsl
