#include "dsl/verify/feq.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "dsl/error.hpp"

namespace dsl {

namespace {

constexpr double kDenominatorFloor = 1e-300;

std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    return v;
}

// Phi at x, or nothing when x is outside the domain or the value is unusable.
std::optional<double> eval(const ScalingFunction& phi, double x) {
    if (!phi.contains(x)) return std::nullopt;
    try {
        const double v = phi(x);
        if (!(v > 0.0) || !std::isfinite(v)) return std::nullopt;
        return v;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Domain) return std::nullopt;
        throw;
    }
}

}  // namespace

EvalGrid EvalGrid::around(const ReferenceScales& scales, double half_width, std::size_t points) {
    const double k = std::exp(half_width);
    return {scales.Y0 / k, scales.Y0 * k, scales.L0 / k, scales.L0 * k, points, points};
}

ResidualReport feq_residual(const ScalingFunction& phi_Y, const ScalingFunction& phi_L, double alpha,
                            double beta, const ReferenceScales& scales, const EvalGrid& grid) {
    if (!(grid.Y_min > 0.0) || !(grid.Y_max >= grid.Y_min) || !(grid.L_min > 0.0) || !(grid.L_max >= grid.L_min) ||
        grid.ny == 0 || grid.nl == 0) {
        throw Error(ErrorCode::InvalidArgument, "evaluation grid needs 0 < min <= max and at least one point");
    }
    ResidualReport report;
    report.grid = grid;
    const auto ys = log_spaced(grid.Y_min, grid.Y_max, grid.ny);
    const auto ls = log_spaced(grid.L_min, grid.L_max, grid.nl);
    const auto phi_L0 = eval(phi_L, scales.L0);
    const auto phi_Y0 = eval(phi_Y, scales.Y0);

    double sum = 0.0;
    for (double Y : ys) {
        const double shrink_l = std::pow(Y / scales.Y0, -beta);
        for (double L : ls) {
            const double shrink_y = std::pow(L / scales.L0, -alpha);
            const auto l1 = eval(phi_L, shrink_l * L);
            const auto l2 = eval(phi_L, shrink_l * scales.L0);
            const auto l3 = eval(phi_L, L);
            const auto y1 = eval(phi_Y, shrink_y * Y);
            const auto y2 = eval(phi_Y, shrink_y * scales.Y0);
            const auto y3 = eval(phi_Y, Y);
            if (!(l1 && l2 && l3 && y1 && y2 && y3 && phi_L0 && phi_Y0)) {
                ++report.skipped;
                continue;
            }
            const double lhs = (*l1 / *l2) * (*phi_L0 / *l3);
            const double rhs = (*y1 / *y2) * (*phi_Y0 / *y3);
            if (!std::isfinite(lhs) || !std::isfinite(rhs)) {
                ++report.skipped;
                continue;
            }
            const double denom = std::max({std::abs(lhs), std::abs(rhs), kDenominatorFloor});
            const double r = std::abs(lhs - rhs) / denom;
            report.max_relative = std::max(report.max_relative, r);
            sum += r;
            ++report.count;
        }
    }
    if (report.count == 0) {
        throw Error(ErrorCode::DomainExhausted, "every evaluation point needs arguments outside a function's domain");
    }
    report.mean_relative = sum / static_cast<double>(report.count);
    return report;
}

}  // namespace dsl
