#pragma once

#include <cstddef>

#include "dsl/params.hpp"
#include "dsl/verify/phi_grid.hpp"

namespace dsl {

// Log-spaced evaluation points over [Y_min, Y_max] x [L_min, L_max].
struct EvalGrid {
    double Y_min = 0.0, Y_max = 0.0;
    double L_min = 0.0, L_max = 0.0;
    std::size_t ny = 50, nl = 50;

    // Y0 e^{-w} .. Y0 e^{w} and L0 e^{-w} .. L0 e^{w}.
    static EvalGrid around(const ReferenceScales& scales, double half_width = 3.0, std::size_t points = 50);
};

struct ResidualReport {
    double max_relative = 0.0;
    double mean_relative = 0.0;
    std::size_t count = 0;    // points evaluated
    std::size_t skipped = 0;  // points needing arguments outside a function's domain
    EvalGrid grid;
};

// Residual of the functional equation linking the two scaling functions,
//   Phi_L(Y~^-b L) / Phi_L(Y~^-b L0) * Phi_L(L0) / Phi_L(L)
//     = Phi_Y(L~^-a Y) / Phi_Y(L~^-a Y0) * Phi_Y(Y0) / Phi_Y(Y),
// with Y~ = Y/Y0, L~ = L/L0, a = alpha and b = beta. The relative residual at a
// point is |lhs - rhs| / max(|lhs|, |rhs|, 1e-300).
// Throws DomainExhausted when every point is skipped.
ResidualReport feq_residual(const ScalingFunction& phi_Y, const ScalingFunction& phi_L, double alpha,
                            double beta, const ReferenceScales& scales, const EvalGrid& grid);

}  // namespace dsl
