#include "dsl/cli/series.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "dsl/productivity.hpp"

namespace dsl::cli {

namespace {

constexpr double kLn10 = std::numbers::ln10;

std::string num(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Natural log relative to `scale` to log10 of the raw variable.
double to_log10(double v, double scale) { return (v + std::log(scale)) / kLn10; }

void row(std::string& out, std::initializer_list<std::string> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out += ',';
        out += c;
        first = false;
    }
    out += '\n';
}

std::size_t stride(std::size_t n, std::size_t max_points) {
    return max_points == 0 ? 1 : std::max<std::size_t>(1, (n + max_points - 1) / max_points);
}

}  // namespace

std::string fig1_scatter(const FirmTable& table, std::size_t max_points) {
    std::string out = "firm_id,log10_L,log10_Y\n";
    const auto& sc = table.scales();
    const std::size_t k = stride(table.size(), max_points);
    for (std::size_t i = 0; i < table.size(); i += k) {
        row(out, {std::to_string(table.records()[i].firm_id), num(to_log10(table.log_l()[i], sc.L0)),
                  num(to_log10(table.log_y()[i], sc.Y0))});
    }
    return out;
}

std::string fig1_kernel(const EstimateResult& r, const ReferenceScales& sc) {
    std::string out = "panel,log10_x,log10_estimate,log10_ci_low,log10_ci_high,log10_linear\n";
    auto panel = [&](const char* name, const KernelFit& k, const RegressionFit& lin, double xs, double ys) {
        for (std::size_t g = 0; g < k.grid.size(); ++g) {
            const double x = k.grid[g];
            row(out, {name, num(to_log10(x, xs)), num(to_log10(k.estimate[g], ys)), num(to_log10(k.ci_low[g], ys)),
                      num(to_log10(k.ci_high[g], ys)), num(to_log10(lin.intercept + lin.slope * x, ys))});
        }
    };
    panel("Y|L", r.kernel_y_on_l, r.alpha_fit, sc.L0, sc.Y0);
    panel("L|Y", r.kernel_l_on_y, r.beta_fit, sc.Y0, sc.L0);
    return out;
}

std::string fig2a_conditional(const EstimateResult& r, const ReferenceScales& sc) {
    std::string out = "bin,log10_L_lo,log10_L_hi,count,log10_Y_lo,log10_Y_hi,density_per_log10_Y\n";
    std::size_t b = 0;
    for (const auto& h : r.histograms_y_given_l.histograms) {
        for (std::size_t k = 0; k < h.density.size(); ++k) {
            row(out, {std::to_string(b), num(to_log10(h.conditioning.lo, sc.L0)), num(to_log10(h.conditioning.hi, sc.L0)),
                      std::to_string(h.count), num(to_log10(h.edges[k], sc.Y0)), num(to_log10(h.edges[k + 1], sc.Y0)),
                      num(h.density[k] * kLn10)});
        }
        ++b;
    }
    return out;
}

std::string collapse_series(const LogDensityFit& fit, double scale, const std::string& variable) {
    const std::string v = "log10_" + variable + "_scaled";
    std::string out = v + "_lo," + v + "_hi," + v + "_mid,density_per_log10,fit_density_per_log10\n";
    for (std::size_t k = 0; k < fit.density.size(); ++k) {
        const double lo = fit.edges[k], hi = fit.edges[k + 1], mid = 0.5 * (lo + hi);
        row(out, {num(to_log10(lo, scale)), num(to_log10(hi, scale)), num(to_log10(mid, scale)),
                  num(fit.density[k] * kLn10), num(std::exp(fit.at(mid)) * kLn10)});
    }
    return out;
}

std::string fig4_scatter(const FirmTable& table, std::size_t max_points) {
    std::string out = "firm_id,log10_C,log10_L\n";
    const auto& sc = table.scales();
    const std::size_t k = stride(table.size(), max_points);
    for (std::size_t i = 0; i < table.size(); i += k) {
        row(out, {std::to_string(table.records()[i].firm_id), num(to_log10(table.log_c()[i], sc.C0())),
                  num(to_log10(table.log_l()[i], sc.L0))});
    }
    return out;
}

std::string fig4_kernel(const ProductivityEstimate& r, const ReferenceScales& sc) {
    std::string out = "log10_C,log10_L_estimate,log10_ci_low,log10_ci_high,log10_L_linear\n";
    const auto& k = r.kernel_l_on_c;
    for (std::size_t g = 0; g < k.grid.size(); ++g) {
        const double x = k.grid[g];
        row(out, {num(to_log10(x, sc.C0())), num(to_log10(k.estimate[g], sc.L0)), num(to_log10(k.ci_low[g], sc.L0)),
                  num(to_log10(k.ci_high[g], sc.L0)),
                  num(to_log10(r.slope_fit.intercept + r.slope_fit.slope * x, sc.L0))});
    }
    return out;
}

std::string fig4_theory(const ProductivityEstimate& r, const DslParams& params, const ReferenceScales& sc) {
    std::string out = "log10_C,log10_E_L\n";
    for (double c : r.kernel_l_on_c.grid) {
        const double C = sc.C0() * std::exp(c);
        row(out, {num(to_log10(c, sc.C0())), num(std::log10(expected_L_given_C(C, params, sc)))});
    }
    return out;
}

}  // namespace dsl::cli
