#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dsl/estimator/histogram.hpp"

namespace dsl {

// Conditional samples rescaled by the scaling law. In log space the law is a
// shift: each firm's response r is mapped to r - exponent * x using its own
// conditioning value x, e.g. ln(Y_scaled/Y0) = y - alpha l.
struct CollapseResult {
    Axis axis = Axis::y_given_l;
    double exponent = 0.0;
    std::vector<Interval> bins;                // surviving conditioning bins
    std::vector<std::vector<double>> scaled;   // per bin, sorted
    std::vector<std::vector<double>> ks;       // pairwise two-sample KS distances
    std::vector<double> pooled;                // all scaled samples, sorted
    std::size_t dropped_bins = 0;

    double max_ks() const;
};

// Throws NoBinsSurvive when no conditioning bin reaches spec.min_count.
CollapseResult scaling_collapse(std::span<const double> conditioning, std::span<const double> response,
                                double exponent, const BinSpec& spec);
CollapseResult scaling_collapse(const FirmTable& table, double exponent, Axis axis, const BinSpec& spec);

}  // namespace dsl
