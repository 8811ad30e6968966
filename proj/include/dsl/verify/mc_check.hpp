#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dsl/params.hpp"

namespace dsl {

// Below this many draws the Monte Carlo report flags insufficient precision.
inline constexpr std::size_t kMinMonteCarlo = 1000;

struct McCheck {
    std::string name;
    double estimate = 0.0;
    double expected = 0.0;
    double se = 0.0;
    bool pass = false;  // |estimate - expected| <= 3 se
};

struct McReport {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    bool insufficient_precision = false;
    std::vector<McCheck> checks;

    // True when every check passes; an imprecise report never fails.
    bool all_pass() const;
};

// Samples n firms and compares their moments, and the slope of E(l|c), with
// the analytic model. Throws NonNormalizable off the lognormal branch.
McReport mc_cross_check(const DslParams& params, std::size_t n, std::uint64_t seed);

}  // namespace dsl
