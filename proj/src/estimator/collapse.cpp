#include "dsl/estimator/collapse.hpp"

#include <algorithm>

#include "dsl/error.hpp"

namespace dsl {

double CollapseResult::max_ks() const {
    double m = 0.0;
    for (const auto& row : ks) {
        for (double d : row) m = std::max(m, d);
    }
    return m;
}

CollapseResult scaling_collapse(std::span<const double> conditioning, std::span<const double> response,
                                double exponent, const BinSpec& spec) {
    if (conditioning.size() != response.size()) {
        throw Error(ErrorCode::InvalidArgument, "conditioning and response differ in length");
    }
    if (conditioning.empty()) throw Error(ErrorCode::NoBinsSurvive, "empty sample");
    const Interval range = spec.range.value_or(central_interval(conditioning, 0.8));
    const auto bin = assign_bins(conditioning, range, spec.conditioning_bins);

    std::vector<std::vector<double>> per_bin(spec.conditioning_bins);
    for (std::size_t i = 0; i < bin.size(); ++i) {
        if (bin[i] == kNoBin) continue;
        per_bin[bin[i]].push_back(response[i] - exponent * conditioning[i]);
    }

    CollapseResult out;
    out.exponent = exponent;
    const double w = range.width() / static_cast<double>(spec.conditioning_bins);
    for (std::size_t b = 0; b < spec.conditioning_bins; ++b) {
        if (per_bin[b].size() < spec.min_count) {
            ++out.dropped_bins;
            continue;
        }
        std::sort(per_bin[b].begin(), per_bin[b].end());
        out.bins.push_back({range.lo + w * static_cast<double>(b),
                            b + 1 == spec.conditioning_bins ? range.hi : range.lo + w * static_cast<double>(b + 1)});
        out.pooled.insert(out.pooled.end(), per_bin[b].begin(), per_bin[b].end());
        out.scaled.push_back(std::move(per_bin[b]));
    }
    if (out.scaled.empty()) {
        throw Error(ErrorCode::NoBinsSurvive, "no conditioning bin holds " + std::to_string(spec.min_count) + " samples");
    }
    std::sort(out.pooled.begin(), out.pooled.end());

    const std::size_t k = out.scaled.size();
    out.ks.assign(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            out.ks[i][j] = out.ks[j][i] = ks_distance_sorted(out.scaled[i], out.scaled[j]);
        }
    }
    return out;
}

CollapseResult scaling_collapse(const FirmTable& table, double exponent, Axis axis, const BinSpec& spec) {
    const auto d = axis_data(table, axis);
    CollapseResult out = scaling_collapse(d.conditioning, d.response, exponent, spec);
    out.axis = axis;
    return out;
}

}  // namespace dsl
