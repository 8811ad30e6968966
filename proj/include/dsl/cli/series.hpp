#pragma once

#include <cstddef>
#include <string>

#include "dsl/estimator/phi_fit.hpp"
#include "dsl/estimator/pipeline.hpp"
#include "dsl/firm_table.hpp"
#include "dsl/params.hpp"

// Plot-ready CSV series, one per figure panel. Every axis is in log10 units
// of the raw variable (log10 L, log10 Y, log10 C), and densities are per
// log10 unit; column names carry the log10 prefix.
namespace dsl::cli {

// Every k-th firm, k chosen so that at most max_points rows are written.
std::string fig1_scatter(const FirmTable& table, std::size_t max_points = 5000);

// Kernel estimate with its bootstrap band and the linear fit, both orientations.
std::string fig1_kernel(const EstimateResult& r, const ReferenceScales& scales);

// Conditional densities of Y for each L bin.
std::string fig2a_conditional(const EstimateResult& r, const ReferenceScales& scales);

// Pooled histogram of a scaled variable with the fitted log-quadratic density.
// `scale` is Y0 for Phi_Y and L0 for Phi_L and Psi_L.
std::string collapse_series(const LogDensityFit& fit, double scale, const std::string& variable);

std::string fig4_scatter(const FirmTable& table, std::size_t max_points = 5000);
std::string fig4_kernel(const ProductivityEstimate& r, const ReferenceScales& scales);

// E[L|C] of the lognormal model over the kernel grid.
std::string fig4_theory(const ProductivityEstimate& r, const DslParams& params, const ReferenceScales& scales);

}  // namespace dsl::cli
