#include "dsl/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "dsl/error.hpp"

namespace dsl::cli {

using nlohmann::json;

namespace {

json range_json(const std::optional<Interval>& r) {
    if (!r) return nullptr;
    return json::array({r->lo, r->hi});
}

std::optional<Interval> range_from(const json& v, const std::string& key) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be [lo, hi] or null");
    }
    return Interval{v[0].get<double>(), v[1].get<double>()};
}

template <class T>
T number(const json& v, const std::string& key) {
    if constexpr (std::is_unsigned_v<T>) {
        if (!v.is_number_unsigned()) throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be a non-negative integer");
    } else {
        if (!v.is_number()) throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be a number");
    }
    return v.get<T>();
}

std::optional<std::filesystem::path> path_from(const json& v, const std::string& key) {
    if (v.is_null()) return std::nullopt;
    if (!v.is_string()) throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be a string or null");
    return std::filesystem::path(v.get<std::string>());
}

json path_json(const std::optional<std::filesystem::path>& p) {
    if (!p) return nullptr;
    return p->generic_string();
}

void check_range(const std::optional<Interval>& r, const char* name) {
    if (r && !(std::isfinite(r->lo) && std::isfinite(r->hi) && r->lo < r->hi)) {
        throw Error(ErrorCode::InvalidArgument, std::string(name) + " needs finite LO < HI");
    }
}

}  // namespace

json to_json(const RunConfig& c) {
    json j;
    j["seed"] = c.seed;
    j["n"] = c.n;
    j["alpha"] = c.params.alpha;
    j["beta"] = c.params.beta;
    j["p"] = c.params.p;
    j["q"] = c.params.q;
    j["s"] = c.params.s;
    j["y0"] = c.Y0;
    j["l0"] = c.L0;
    j["round_labor"] = c.round_labor;
    j["l_range"] = range_json(c.l_range);
    j["y_range"] = range_json(c.y_range);
    j["c_range"] = range_json(c.c_range);
    j["bins"] = c.bins;
    j["bandwidth"] = c.bandwidth ? json(*c.bandwidth) : json(nullptr);
    j["bootstrap"] = c.bootstrap;
    j["bootstrap_seed"] = c.bootstrap_seed;
    j["input"] = path_json(c.input);
    j["out"] = c.out.generic_string();
    j["mu_l"] = c.mu_L ? json(*c.mu_L) : json(nullptr);
    j["mu_y"] = c.mu_Y ? json(*c.mu_Y) : json(nullptr);
    j["phi_y"] = path_json(c.phi_y);
    j["phi_l"] = path_json(c.phi_l);
    j["tolerance"] = c.tolerance;
    return j;
}

void merge_json(RunConfig& c, const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
    for (const auto& [key, v] : j.items()) {
        if (key == "seed") c.seed = number<std::uint64_t>(v, key);
        else if (key == "n") c.n = number<std::size_t>(v, key);
        else if (key == "alpha") c.params.alpha = number<double>(v, key);
        else if (key == "beta") c.params.beta = number<double>(v, key);
        else if (key == "p") c.params.p = number<double>(v, key);
        else if (key == "q") c.params.q = number<double>(v, key);
        else if (key == "s") c.params.s = number<double>(v, key);
        else if (key == "y0") c.Y0 = number<double>(v, key);
        else if (key == "l0") c.L0 = number<double>(v, key);
        else if (key == "round_labor") {
            if (!v.is_boolean()) throw Error(ErrorCode::InvalidArgument, "'round_labor' must be a boolean");
            c.round_labor = v.get<bool>();
        }
        else if (key == "l_range") c.l_range = range_from(v, key);
        else if (key == "y_range") c.y_range = range_from(v, key);
        else if (key == "c_range") c.c_range = range_from(v, key);
        else if (key == "bins") c.bins = number<std::size_t>(v, key);
        else if (key == "bandwidth") c.bandwidth = v.is_null() ? std::nullopt : std::optional(number<double>(v, key));
        else if (key == "bootstrap") c.bootstrap = number<std::size_t>(v, key);
        else if (key == "bootstrap_seed") c.bootstrap_seed = number<std::uint64_t>(v, key);
        else if (key == "input") c.input = path_from(v, key);
        else if (key == "out") {
            const auto p = path_from(v, key);
            if (!p) throw Error(ErrorCode::InvalidArgument, "'out' must be a string");
            c.out = *p;
        }
        else if (key == "mu_l") c.mu_L = v.is_null() ? std::nullopt : std::optional(number<double>(v, key));
        else if (key == "mu_y") c.mu_Y = v.is_null() ? std::nullopt : std::optional(number<double>(v, key));
        else if (key == "phi_y") c.phi_y = path_from(v, key);
        else if (key == "phi_l") c.phi_l = path_from(v, key);
        else if (key == "tolerance") c.tolerance = number<double>(v, key);
        else throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
    }
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::InvalidArgument, "config " + path.string() + " is not valid JSON: " + e.what());
    }
    RunConfig c;
    merge_json(c, j);
    return c;
}

void validate(const RunConfig& c) {
    ReferenceScales::make(c.Y0, c.L0);
    for (double v : {c.params.alpha, c.params.beta, c.params.p, c.params.q, c.params.s}) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "parameters must be finite");
    }
    check_range(c.l_range, "l_range");
    check_range(c.y_range, "y_range");
    check_range(c.c_range, "c_range");
    if (c.bins == 0) throw Error(ErrorCode::InvalidArgument, "bins must be positive");
    if (c.bandwidth && !(*c.bandwidth > 0.0 && std::isfinite(*c.bandwidth))) {
        throw Error(ErrorCode::InvalidArgument, "bandwidth must be positive");
    }
    if (!(c.tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
    if (c.mu_L.has_value() != c.mu_Y.has_value()) {
        throw Error(ErrorCode::InvalidArgument, "mu_l and mu_y go together");
    }
    if (c.mu_L && !(*c.mu_L > 0.0 && *c.mu_Y > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "mu_l and mu_y must be positive");
    }
}

Interval to_log_range(const Interval& log10_range, double scale) {
    const double shift = std::log(scale);
    return {log10_range.lo * std::numbers::ln10 - shift, log10_range.hi * std::numbers::ln10 - shift};
}

}  // namespace dsl::cli
