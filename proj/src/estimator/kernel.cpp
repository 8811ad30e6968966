#include "dsl/estimator/kernel.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "dsl/error.hpp"

namespace dsl {

namespace {

constexpr std::size_t kMinPairs = 30;
constexpr double kCutoff = 7.0;  // kernel truncated beyond 7 bandwidths (weight < 3e-11)
constexpr std::size_t kFittedGrid = 256;

// Kernel weights of one evaluation point over a contiguous run of the
// x-sorted data, with the weighted responses alongside.
struct Window {
    Eigen::Index begin = 0;
    Eigen::VectorXd weights;
    Eigen::VectorXd weighted_y;
};

Window make_window(std::span<const double> xs, std::span<const double> ys, double at, double h) {
    const auto lo = std::lower_bound(xs.begin(), xs.end(), at - kCutoff * h);
    const auto hi = std::upper_bound(xs.begin(), xs.end(), at + kCutoff * h);
    Window w;
    w.begin = lo - xs.begin();
    const Eigen::Index m = hi - lo;
    w.weights.resize(m);
    w.weighted_y.resize(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double u = (xs[static_cast<std::size_t>(w.begin + k)] - at) / h;
        w.weights(k) = std::exp(-0.5 * u * u);
        w.weighted_y(k) = w.weights(k) * ys[static_cast<std::size_t>(w.begin + k)];
    }
    return w;
}

double nw_value(const Window& w) {
    const double den = w.weights.sum();
    return den > 0.0 ? w.weighted_y.sum() / den : std::nan("");
}

// Unbiased draw from [0, n) by multiply-shift with rejection (Lemire).
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

constexpr std::size_t kBootstrapBins = 4096;

// Linear binning of the x-sorted data onto an even grid of kBootstrapBins
// points. Bootstrap replicates are evaluated on the binned sums.
struct Binning {
    double x0 = 0.0;
    double step = 1.0;
    std::vector<std::uint32_t> bin;  // left neighbour of each case
    std::vector<double> frac;        // share assigned to the right neighbour
};

Binning make_binning(std::span<const double> xs) {
    Binning bn;
    bn.x0 = xs.front();
    bn.step = (xs.back() - xs.front()) / static_cast<double>(kBootstrapBins - 1);
    bn.bin.resize(xs.size());
    bn.frac.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double u = (xs[i] - bn.x0) / bn.step;
        const auto j = std::min(static_cast<std::size_t>(u), kBootstrapBins - 2);
        bn.bin[i] = static_cast<std::uint32_t>(j);
        bn.frac[i] = std::clamp(u - static_cast<double>(j), 0.0, 1.0);
    }
    return bn;
}

struct BinWindow {
    std::size_t begin = 0;
    std::vector<double> weights;
};

BinWindow make_bin_window(const Binning& bn, double at, double h) {
    const double lo = (at - kCutoff * h - bn.x0) / bn.step;
    const double hi = (at + kCutoff * h - bn.x0) / bn.step;
    const auto last = static_cast<double>(kBootstrapBins - 1);
    BinWindow w;
    w.begin = static_cast<std::size_t>(std::clamp(std::ceil(lo), 0.0, last));
    const auto end = static_cast<std::size_t>(std::clamp(std::floor(hi), -1.0, last) + 1.0);
    for (std::size_t k = w.begin; k < end; ++k) {
        const double u = (bn.x0 + bn.step * static_cast<double>(k) - at) / h;
        w.weights.push_back(std::exp(-0.5 * u * u));
    }
    return w;
}

}  // namespace

double rule_of_thumb_bandwidth(std::span<const double> x) {
    return 1.06 * std::sqrt(variance(x)) * std::pow(static_cast<double>(x.size()), -0.2);
}

std::vector<double> default_kernel_grid(std::span<const double> x, std::size_t points) {
    if (x.empty()) throw Error(ErrorCode::InsufficientData, "empty sample");
    if (points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least two points");
    const Interval r = central_interval(x, 0.95);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = r.lo + r.width() * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return grid;
}

KernelFit kernel_regression(std::span<const double> x, std::span<const double> y,
                            std::span<const double> grid, const KernelOptions& options) {
    if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "x and y differ in length");
    if (x.size() < kMinPairs) {
        throw Error(ErrorCode::InsufficientData, "kernel regression needs at least 30 pairs");
    }
    if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty evaluation grid");
    if (!(options.confidence > 0.0 && options.confidence < 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "confidence must lie in (0, 1)");
    }
    if (variance(x) <= 0.0) throw Error(ErrorCode::DegenerateX, "x has zero variance");
    const double h = options.bandwidth.value_or(rule_of_thumb_bandwidth(x));
    if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::InvalidArgument, "bandwidth must be positive");

    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = x[order[i]];
        ys[i] = y[order[i]];
    }

    KernelFit fit;
    fit.bandwidth = h;
    fit.grid.assign(grid.begin(), grid.end());

    std::vector<Window> windows;
    windows.reserve(grid.size());
    for (double g : grid) {
        windows.push_back(make_window(xs, ys, g, h));
        const double v = nw_value(windows.back());
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::InsufficientData, "no data within reach of grid point " + std::to_string(g));
        }
        fit.estimate.push_back(v);
    }

    // Bootstrap band.
    const std::size_t B = options.bootstrap;
    std::vector<std::vector<double>> reps(grid.size());
    for (auto& r : reps) r.reserve(B);
    if (B > 0 && xs.back() > xs.front()) {
        const Binning bn = make_binning(xs);
        std::vector<BinWindow> bin_windows;
        bin_windows.reserve(grid.size());
        for (double g : grid) bin_windows.push_back(make_bin_window(bn, g, h));
        std::vector<std::uint32_t> counts(n);
        std::vector<double> s0(kBootstrapBins), s1(kBootstrapBins);
        for (std::size_t b = 0; b < B; ++b) {
            std::seed_seq seq{static_cast<std::uint32_t>(options.bootstrap_seed),
                              static_cast<std::uint32_t>(options.bootstrap_seed >> 32),
                              static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
            std::mt19937_64 rng(seq);
            std::fill(counts.begin(), counts.end(), 0u);
            for (std::size_t i = 0; i < n; ++i) ++counts[bounded_draw(rng, n)];
            std::fill(s0.begin(), s0.end(), 0.0);
            std::fill(s1.begin(), s1.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                if (counts[i] == 0) continue;
                const double c = counts[i], t = bn.frac[i];
                const std::size_t j = bn.bin[i];
                s0[j] += c * (1.0 - t);
                s0[j + 1] += c * t;
                s1[j] += c * (1.0 - t) * ys[i];
                s1[j + 1] += c * t * ys[i];
            }
            for (std::size_t g = 0; g < grid.size(); ++g) {
                const BinWindow& w = bin_windows[g];
                double num = 0.0, den = 0.0;
                for (std::size_t k = 0; k < w.weights.size(); ++k) {
                    num += w.weights[k] * s1[w.begin + k];
                    den += w.weights[k] * s0[w.begin + k];
                }
                if (den > 0.0) reps[g].push_back(num / den);
            }
        }
    }
    const double tail = 0.5 * (1.0 - options.confidence);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double lo = fit.estimate[g], hi = fit.estimate[g];
        if (!reps[g].empty()) {
            std::sort(reps[g].begin(), reps[g].end());
            lo = interpolated_quantile(reps[g], tail);
            hi = interpolated_quantile(reps[g], 1.0 - tail);
        }
        // Percentile bands need not cover the point estimate; widen to it.
        fit.ci_low.push_back(std::min(lo, fit.estimate[g]));
        fit.ci_high.push_back(std::max(hi, fit.estimate[g]));
    }

    // Goodness of fit: fitted values interpolated from a dense grid over the data.
    std::size_t first = 0, last = n;
    if (options.r2_range) {
        first = static_cast<std::size_t>(std::lower_bound(xs.begin(), xs.end(), options.r2_range->lo) - xs.begin());
        last = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), options.r2_range->hi) - xs.begin());
    }
    if (last > first + 1) {
        const double a = xs[first], b = xs[last - 1];
        std::vector<double> dense_x, dense_v;
        const std::size_t m = b > a ? kFittedGrid : 1;
        for (std::size_t k = 0; k < m; ++k) {
            const double at = m == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(m - 1);
            dense_x.push_back(at);
            dense_v.push_back(nw_value(make_window(xs, ys, at, h)));
        }
        std::vector<double> fitted, observed;
        fitted.reserve(last - first);
        observed.reserve(last - first);
        std::size_t k = 0;
        for (std::size_t i = first; i < last; ++i) {
            double v = dense_v[0];
            if (m > 1) {
                while (k + 2 < m && dense_x[k + 1] < xs[i]) ++k;
                const double t = (xs[i] - dense_x[k]) / (dense_x[k + 1] - dense_x[k]);
                v = dense_v[k] + std::clamp(t, 0.0, 1.0) * (dense_v[k + 1] - dense_v[k]);
            }
            fitted.push_back(v);
            observed.push_back(ys[i]);
        }
        fit.r2 = squared_correlation(fitted, observed);
    }
    return fit;
}

}  // namespace dsl
