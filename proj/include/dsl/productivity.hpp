#pragma once

#include "dsl/params.hpp"

// Labor productivity C = Y/L under the lognormal branch. The pair (c, l) with
// c = ln(C/C0) is again jointly lognormal with (alpha, beta, p) replaced by
// (alpha_t, beta_t, p_t).

namespace dsl {

struct ProductivityParams {
    double alpha_t = 0.0;  // alpha - 1
    double beta_t = 0.0;   // slope of E(l|c)
    double p_t = 0.0;
    double gamma1 = 0.0;   // curvature of ln P_C in c
    double gamma2 = 0.0;   // linear coefficient of ln P_C in c
    double q_t = 0.0;      // linear coefficient of ln Psi_L
};

// Throws SingularProductivity when |alpha - 1| or |alpha + beta - 2 alpha beta|
// is at most kSingularEps.
ProductivityParams derive_productivity(const DslParams& params);

// P_CL(C, L) = L P_YL(C L, L).
double productivity_joint_pdf(double C, double L, const DslParams& params,
                              const ReferenceScales& scales);

double marginal_pdf_C(double C, const DslParams& params, const ReferenceScales& scales);

// E[L | C]; proportional to (C/C0)^beta_t.
double expected_L_given_C(double C, const DslParams& params, const ReferenceScales& scales);

// d E(l|c) / dc.
double productivity_slope(const DslParams& params);

// Psi_L(u) with P(L|C) = (C/C0)^-beta_t Psi_L((C/C0)^-beta_t L). Its log
// curvature in ln(u/L0) is -alpha_t p_t = -(alpha + beta - 2 alpha beta) p.
double psi_L(double u, const DslParams& params, const ReferenceScales& scales);

double conditional_pdf_L_given_C(double L, double C, const DslParams& params,
                                 const ReferenceScales& scales);

}  // namespace dsl
