#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "dsl/estimator/kernel.hpp"
#include "dsl/estimator/stats.hpp"
#include "dsl/params.hpp"

namespace dsl::cli {

// Effective settings of one invocation. Ranges and the bandwidth are given in
// log10 units of the raw variables, the axes of the figures: --l-range 0.7 2.5
// means 10^0.7 < L < 10^2.5.
struct RunConfig {
    std::uint64_t seed = 1;
    std::size_t n = 100000;
    DslParams params = published_params();
    double Y0 = default_scales().Y0;
    double L0 = default_scales().L0;
    bool round_labor = false;

    std::optional<Interval> l_range;
    std::optional<Interval> y_range;
    std::optional<Interval> c_range;
    std::size_t bins = 8;
    std::optional<double> bandwidth;
    std::size_t bootstrap = 200;
    std::uint64_t bootstrap_seed = kDefaultBootstrapSeed;

    std::optional<std::filesystem::path> input;
    std::filesystem::path out = "dsl_out";

    // verify
    std::optional<double> mu_L;
    std::optional<double> mu_Y;
    std::optional<std::filesystem::path> phi_y;
    std::optional<std::filesystem::path> phi_l;
    double tolerance = 1e-10;

    ReferenceScales scales() const { return ReferenceScales::make(Y0, L0); }
};

nlohmann::json to_json(const RunConfig& c);

// Overlays the keys of j onto c. Throws InvalidArgument on unknown keys or
// values of the wrong type.
void merge_json(RunConfig& c, const nlohmann::json& j);

RunConfig load_config(const std::filesystem::path& path);

// Checks numeric fields against the domains of the modules they feed.
void validate(const RunConfig& c);

// log10 range of a raw variable to the natural-log variable relative to `scale`.
Interval to_log_range(const Interval& log10_range, double scale);

}  // namespace dsl::cli
