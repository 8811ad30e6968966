#pragma once

#include <cstddef>
#include <cstdint>

#include "dsl/firm_table.hpp"
#include "dsl/params.hpp"

namespace dsl {

struct SynthesisSpec {
    DslParams params = published_params();
    ReferenceScales scales = default_scales();
    std::size_t n = 100000;
    std::uint64_t seed = 1;
    bool round_labor = false;  // round L to the nearest integer, at least 1
};

// Draws n i.i.d. firms from the lognormal joint law. (l, y) come from a
// lower-triangular factor of the covariance applied to standard normals from
// a single mt19937_64 stream, so the table is a pure function of its inputs.
// Throws NonNormalizable unless the parameters are on the lognormal branch,
// InvalidArgument when n == 0.
FirmTable sample_firms(const SynthesisSpec& spec);

// Sample mean and unbiased covariance of (l, y).
struct SampleMoments {
    std::size_t n = 0;
    double mean_l = 0.0;
    double mean_y = 0.0;
    double cov_ll = 0.0;
    double cov_ly = 0.0;
    double cov_yy = 0.0;
};

// Throws EmptyTable for fewer than two records.
SampleMoments sample_moments(const FirmTable& table);

}  // namespace dsl
