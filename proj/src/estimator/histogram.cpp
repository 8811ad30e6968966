#include "dsl/estimator/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "dsl/error.hpp"

namespace dsl {

const char* axis_name(Axis axis) noexcept {
    switch (axis) {
        case Axis::y_given_l: return "Y|L";
        case Axis::l_given_y: return "L|Y";
        case Axis::l_given_c: return "L|C";
    }
    return "?";
}

AxisData axis_data(const FirmTable& table, Axis axis) {
    switch (axis) {
        case Axis::y_given_l: return {table.log_l(), table.log_y()};
        case Axis::l_given_y: return {table.log_y(), table.log_l()};
        case Axis::l_given_c: return {table.log_c(), table.log_l()};
    }
    throw Error(ErrorCode::InvalidArgument, "unknown axis");
}

std::vector<std::size_t> assign_bins(std::span<const double> v, Interval range, std::size_t bins) {
    if (bins == 0) throw Error(ErrorCode::InvalidArgument, "bin count must be positive");
    if (!(range.hi > range.lo)) throw Error(ErrorCode::InvalidArgument, "empty binning range");
    const double scale = static_cast<double>(bins) / range.width();
    std::vector<std::size_t> out(v.size(), kNoBin);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!range.contains(v[i])) continue;
        const auto k = static_cast<std::size_t>((v[i] - range.lo) * scale);
        out[i] = std::min(k, bins - 1);
    }
    return out;
}

HistogramSet conditional_histograms(std::span<const double> conditioning,
                                    std::span<const double> response, const BinSpec& spec) {
    if (conditioning.size() != response.size()) {
        throw Error(ErrorCode::InvalidArgument, "conditioning and response differ in length");
    }
    if (conditioning.empty()) throw Error(ErrorCode::NoBinsSurvive, "empty sample");
    if (spec.response_bins == 0) throw Error(ErrorCode::InvalidArgument, "response bin count must be positive");
    const Interval range = spec.range.value_or(central_interval(conditioning, 0.8));
    const auto bin = assign_bins(conditioning, range, spec.conditioning_bins);

    std::vector<std::size_t> counts(spec.conditioning_bins, 0);
    for (auto b : bin) {
        if (b != kNoBin) ++counts[b];
    }
    std::vector<bool> keep(spec.conditioning_bins);
    double rlo = INFINITY, rhi = -INFINITY;
    for (std::size_t i = 0; i < bin.size(); ++i) {
        if (bin[i] == kNoBin || counts[bin[i]] < spec.min_count) continue;
        rlo = std::min(rlo, response[i]);
        rhi = std::max(rhi, response[i]);
    }
    HistogramSet out;
    for (std::size_t b = 0; b < spec.conditioning_bins; ++b) {
        keep[b] = counts[b] >= spec.min_count;
        if (!keep[b]) ++out.dropped_bins;
    }
    if (out.dropped_bins == spec.conditioning_bins) {
        throw Error(ErrorCode::NoBinsSurvive, "no conditioning bin holds " + std::to_string(spec.min_count) + " samples");
    }
    if (!(rhi > rlo)) {
        // Degenerate response: a single unit-width bin around the value.
        rlo -= 0.5;
        rhi += 0.5;
    }

    const Interval rrange{rlo, rhi};
    const auto rbin = assign_bins(response, rrange, spec.response_bins);
    const double width = rrange.width() / static_cast<double>(spec.response_bins);
    std::vector<double> edges(spec.response_bins + 1);
    for (std::size_t k = 0; k <= spec.response_bins; ++k) edges[k] = rlo + width * static_cast<double>(k);
    edges.back() = rhi;

    std::vector<std::vector<double>> tallies(spec.conditioning_bins, std::vector<double>(spec.response_bins, 0.0));
    for (std::size_t i = 0; i < bin.size(); ++i) {
        if (bin[i] == kNoBin || !keep[bin[i]]) continue;
        tallies[bin[i]][rbin[i]] += 1.0;
    }
    const double cwidth = range.width() / static_cast<double>(spec.conditioning_bins);
    for (std::size_t b = 0; b < spec.conditioning_bins; ++b) {
        if (!keep[b]) continue;
        ConditionalHistogram h;
        h.conditioning = {range.lo + cwidth * static_cast<double>(b),
                          b + 1 == spec.conditioning_bins ? range.hi : range.lo + cwidth * static_cast<double>(b + 1)};
        h.edges = edges;
        h.count = counts[b];
        h.density.resize(spec.response_bins);
        for (std::size_t k = 0; k < spec.response_bins; ++k) {
            h.density[k] = tallies[b][k] / (static_cast<double>(h.count) * (edges[k + 1] - edges[k]));
        }
        out.histograms.push_back(std::move(h));
    }
    return out;
}

HistogramSet conditional_histograms(const FirmTable& table, Axis axis, const BinSpec& spec) {
    const auto d = axis_data(table, axis);
    return conditional_histograms(d.conditioning, d.response, spec);
}

}  // namespace dsl
