#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "dsl/estimator/stats.hpp"
#include "dsl/firm_table.hpp"

namespace dsl {

// Which conditional law is examined: Y given L, L given Y, or L given C.
enum class Axis { y_given_l, l_given_y, l_given_c };

const char* axis_name(Axis axis) noexcept;

// Conditioning and response log variables of the table for an axis.
struct AxisData {
    std::span<const double> conditioning;
    std::span<const double> response;
};
AxisData axis_data(const FirmTable& table, Axis axis);

struct BinSpec {
    std::optional<Interval> range;  // conditioning range (log units); default central 80%
    std::size_t conditioning_bins = 8;
    std::size_t response_bins = 40;
    std::size_t min_count = 50;
};

// Density of the log response within one conditioning bin. Conditioning bins
// are equal-width in the log variable, i.e. logarithmically equal in L or Y.
struct ConditionalHistogram {
    Interval conditioning;
    std::vector<double> edges;    // response bin edges, size bins + 1
    std::vector<double> density;  // per unit of the log response
    std::size_t count = 0;
};

struct HistogramSet {
    std::vector<ConditionalHistogram> histograms;
    std::size_t dropped_bins = 0;  // bins under min_count
};

// Assigns each value inside `range` to one of `bins` equal-width bins (the
// upper edge belongs to the last bin); npos outside.
std::vector<std::size_t> assign_bins(std::span<const double> v, Interval range, std::size_t bins);
inline constexpr std::size_t kNoBin = static_cast<std::size_t>(-1);

// Throws NoBinsSurvive when every conditioning bin is under min_count.
HistogramSet conditional_histograms(std::span<const double> conditioning,
                                    std::span<const double> response, const BinSpec& spec);
HistogramSet conditional_histograms(const FirmTable& table, Axis axis, const BinSpec& spec);

}  // namespace dsl
