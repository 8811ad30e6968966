#pragma once

#include "dsl/params.hpp"

// Closed-form densities of the lognormal branch, all normalized to unit
// probability in their natural (Y, L) arguments. Arguments must be positive;
// nonpositive arguments throw Domain. Parameters must be on the lognormal
// branch (NonNormalizable otherwise), except for the PowerLawParams overloads.

namespace dsl {

// -a p l^2 + 2 a b p l y - b p y^2 + s l + q y; zero at the reference point.
double log_joint_exponent(double y, double l, const DslParams& params);

double joint_pdf(double Y, double L, const DslParams& params, const ReferenceScales& scales);

double marginal_pdf_L(double L, const DslParams& params, const ReferenceScales& scales);
double marginal_pdf_Y(double Y, const DslParams& params, const ReferenceScales& scales);

// Pareto laws of the alpha*beta = 1 branch, normalized on [L0, inf) and
// [Y0, inf) respectively; zero below the reference scale.
double marginal_pdf_L(double L, const PowerLawParams& params, const ReferenceScales& scales);
double marginal_pdf_Y(double Y, const PowerLawParams& params, const ReferenceScales& scales);

// Quadratic and linear coefficients of ln P_L (resp. ln P_Y) in l (resp. y).
struct LogQuadratic {
    double quadratic = 0.0;
    double linear = 0.0;
};
LogQuadratic marginal_L_coefficients(const DslParams& params);
LogQuadratic marginal_Y_coefficients(const DslParams& params);

// Phi_Y(Y) ~ exp(-b p y^2 + q y) and Phi_L(L) ~ exp(-a p l^2 + s l), scaled
// so that the conditional densities they generate integrate to one.
double scaling_function_Y(double Y, const DslParams& params, const ReferenceScales& scales);
double scaling_function_L(double L, const DslParams& params, const ReferenceScales& scales);

// P(Y|L) = (L/L0)^-alpha Phi_Y((L/L0)^-alpha Y) and the mirror for P(L|Y).
double conditional_pdf_Y_given_L(double Y, double L, const DslParams& params,
                                 const ReferenceScales& scales);
double conditional_pdf_L_given_Y(double L, double Y, const DslParams& params,
                                 const ReferenceScales& scales);

// Density of a normal variate, shared by the closed forms above.
double normal_pdf(double x, double mean, double variance);

}  // namespace dsl
