#include "dsl/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "dsl/cli/config.hpp"
#include "dsl/cli/report.hpp"
#include "dsl/cli/series.hpp"
#include "dsl/error.hpp"
#include "dsl/estimator/pipeline.hpp"
#include "dsl/firm_table.hpp"
#include "dsl/productivity.hpp"
#include "dsl/sampler.hpp"
#include "dsl/verify/feq.hpp"
#include "dsl/verify/identities.hpp"
#include "dsl/verify/mc_check.hpp"
#include "dsl/verify/phi_grid.hpp"

namespace dsl::cli {

using nlohmann::json;

namespace {

constexpr double kLn10 = std::numbers::ln10;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::NonNormalizable:
            return kExitConfig;
        case ErrorCode::DomainExhausted:
            return kExitVerification;
        default:
            return kExitData;
    }
}

json error_json(const Error& e) { return {{"code", e.name()}, {"message", e.what()}}; }

json value_se(double v, double se) { return {{"value", v}, {"se", se}}; }

json range_log10(const Interval& r, double scale) {
    const double shift = std::log(scale);
    return json::array({(r.lo + shift) / kLn10, (r.hi + shift) / kLn10});
}

std::string fixed(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

json base_report(const std::string& command, const RunConfig& cfg) {
    json r;
    r["tool"] = "dsl";
    r["version"] = kVersion;
    r["command"] = command;
    r["timestamp"] = utc_timestamp();
    r["config"] = to_json(cfg);
    return r;
}

void write_report(const OutputSet& os, json report) {
    report["manifest"] = os.manifest_json();
    write_atomic(os.dir() / "report.json", report.dump(2) + "\n");
}

EstimateConfig estimate_config(const RunConfig& cfg) {
    EstimateConfig ec;
    if (cfg.l_range) ec.l_range = to_log_range(*cfg.l_range, cfg.L0);
    if (cfg.y_range) ec.y_range = to_log_range(*cfg.y_range, cfg.Y0);
    if (cfg.c_range) ec.c_range = to_log_range(*cfg.c_range, cfg.Y0 / cfg.L0);
    ec.conditioning_bins = cfg.bins;
    if (cfg.bandwidth) ec.bandwidth = *cfg.bandwidth * kLn10;
    ec.bootstrap = cfg.bootstrap;
    ec.bootstrap_seed = cfg.bootstrap_seed;
    return ec;
}

FirmTable read_input(const RunConfig& cfg) {
    return ingest_csv(*cfg.input, cfg.scales());
}

json fit_json(const RegressionFit& f, double r2_kernel, double x_scale) {
    return {{"value", f.slope},
            {"se", f.slope_se},
            {"intercept", f.intercept},
            {"r2_linear", f.r2},
            {"r2_kernel", r2_kernel},
            {"fit_range_log10", range_log10(f.fit_range, x_scale)},
            {"n_used", f.n_used}};
}

json collapse_json(const CollapseResult& c) {
    return {{"max_ks", c.max_ks()}, {"bins", c.bins.size()}, {"dropped_bins", c.dropped_bins}, {"pooled", c.pooled.size()}};
}

json estimate_json(const EstimateResult& r, const ReferenceScales& sc) {
    json j;
    j["alpha"] = fit_json(r.alpha_fit, r.kernel_y_on_l.r2, sc.L0);
    j["beta"] = fit_json(r.beta_fit, r.kernel_l_on_y.r2, sc.Y0);
    j["p"] = {{"phi_y", value_se(r.phi_y.p_hat, r.phi_y.p_se)},
              {"phi_l", value_se(r.phi_l.p_hat, r.phi_l.p_se)},
              {"combined", value_se(r.p.value, r.p.se)},
              {"mle",
               {{"phi_y", value_se(r.phi_y_mle.p_hat, r.phi_y_mle.p_se)},
                {"phi_l", value_se(r.phi_l_mle.p_hat, r.phi_l_mle.p_se)},
                {"combined", value_se(r.p_mle.value, r.p_mle.se)}}}};
    j["q"] = value_se(r.phi_y.tilt_hat, r.phi_y.tilt_se);
    j["s"] = value_se(r.phi_l.tilt_hat, r.phi_l.tilt_se);
    j["collapse"] = {{"phi_y", collapse_json(r.collapse_y)}, {"phi_l", collapse_json(r.collapse_l)}};
    j["kernel_bandwidth_log10"] = {{"y_on_l", r.kernel_y_on_l.bandwidth / kLn10},
                                   {"l_on_y", r.kernel_l_on_y.bandwidth / kLn10}};
    return j;
}

void write_estimate_series(OutputSet& os, const FirmTable& t, const EstimateResult& r) {
    const auto& sc = t.scales();
    os.write("fig1_scatter.csv", fig1_scatter(t));
    os.write("fig1_kernel.csv", fig1_kernel(r, sc));
    os.write("fig2a_conditional.csv", fig2a_conditional(r, sc));
    os.write("fig2b_collapse.csv", collapse_series(r.phi_y.log_density, sc.Y0, "Y"));
    os.write("fig3_collapse.csv", collapse_series(r.phi_l.log_density, sc.L0, "L"));
}

json productivity_params_json(const ProductivityParams& p) {
    return {{"alpha_t", p.alpha_t}, {"beta_t", p.beta_t}, {"p_t", p.p_t},
            {"gamma1", p.gamma1},   {"gamma2", p.gamma2}, {"q_t", p.q_t}};
}

json productivity_json(const ProductivityEstimate& r, const ReferenceScales& sc) {
    json j;
    j["beta_t"] = value_se(r.slope_fit.slope, r.slope_fit.slope_se);
    j["gamma1"] = value_se(r.gamma1_hat, r.gamma1_se);
    j["r2_linear"] = r.slope_fit.r2;
    j["r2_kernel"] = r.kernel_l_on_c.r2;
    j["c_range_log10"] = range_log10(r.c_range, sc.C0());
    j["mean_log10_C"] = (r.mean_c + std::log(sc.C0())) / kLn10;
    j["collapse"] = collapse_json(r.collapse);
    j["psi_curvature"] = r.psi_fit ? json(r.psi_fit->coeffs[2]) : json(nullptr);
    j["warnings"] = r.warnings;
    return j;
}

void write_productivity_series(OutputSet& os, const FirmTable& t, const ProductivityEstimate& r,
                               const DslParams& theory) {
    const auto& sc = t.scales();
    os.write("fig4_scatter.csv", fig4_scatter(t));
    os.write("fig4_kernel.csv", fig4_kernel(r, sc));
    os.write("fig4_theory.csv", fig4_theory(r, theory, sc));
    os.write("fig5_collapse.csv", collapse_series(r.psi_fit.value_or(LogDensityFit{}), sc.L0, "L"));
}

json ledger_json(const IdentityLedger& ledger) {
    json checks = json::array();
    for (const auto& c : ledger.checks) {
        checks.push_back({{"name", c.name},
                          {"lhs", c.lhs},
                          {"rhs", c.rhs},
                          {"rel_error", c.rel_error},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    }
    return {{"all_pass", ledger.all_pass()}, {"checks", checks}};
}

json residual_json(const ResidualReport& r, double tolerance) {
    return {{"max_relative", r.max_relative},
            {"mean_relative", r.mean_relative},
            {"count", r.count},
            {"skipped", r.skipped},
            {"grid",
             {{"Y", {r.grid.Y_min, r.grid.Y_max}}, {"L", {r.grid.L_min, r.grid.L_max}}, {"ny", r.grid.ny}, {"nl", r.grid.nl}}},
            {"tolerance", tolerance},
            {"pass", r.max_relative < tolerance}};
}

json mc_json(const McReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(
            {{"name", c.name}, {"estimate", c.estimate}, {"expected", c.expected}, {"se", c.se}, {"pass", c.pass}});
    }
    return {{"n", r.n},
            {"seed", r.seed},
            {"insufficient_precision", r.insufficient_precision},
            {"all_pass", r.all_pass()},
            {"checks", checks}};
}

void report_failed(const IdentityLedger& ledger, std::ostream& err) {
    for (const auto& c : ledger.checks) {
        if (!c.pass) {
            err << "FAIL " << c.name << ": " << c.lhs << " vs " << c.rhs << " (relative error " << c.rel_error << ")\n";
        }
    }
}

// ---- subcommands -----------------------------------------------------------

int cmd_generate(const RunConfig& cfg, OutputSet& os, json& report, std::ostream& out) {
    SynthesisSpec spec;
    spec.params = cfg.params;
    spec.scales = cfg.scales();
    spec.n = cfg.n;
    spec.seed = cfg.seed;
    spec.round_labor = cfg.round_labor;
    const auto table = sample_firms(spec);
    std::ostringstream csv;
    write_csv(table, csv);
    os.write("firms.csv", csv.str());
    report["results"] = {{"firms", table.size()}, {"file", "firms.csv"}};
    out << "wrote " << table.size() << " firms to " << (os.dir() / "firms.csv").string() << "\n";
    return kExitOk;
}

int cmd_estimate(const RunConfig& cfg, OutputSet& os, json& report, std::ostream& out) {
    const auto table = read_input(cfg);
    report["input"] = {{"records", table.size()}, {"rejected", table.rejected()}};
    const auto r = estimate_all(table, estimate_config(cfg));
    report["results"] = estimate_json(r, table.scales());
    write_estimate_series(os, table, r);
    out << "alpha = " << fixed(r.alpha_fit.slope) << " +- " << fixed(r.alpha_fit.slope_se) << "\n"
        << "beta  = " << fixed(r.beta_fit.slope) << " +- " << fixed(r.beta_fit.slope_se) << "\n"
        << "p     = " << fixed(r.p.value) << " +- " << fixed(r.p.se) << "  (Phi_Y " << fixed(r.phi_y.p_hat)
        << ", Phi_L " << fixed(r.phi_l.p_hat) << ")\n";
    return kExitOk;
}

int cmd_productivity(const RunConfig& cfg, OutputSet& os, json& report, std::ostream& out) {
    const auto table = read_input(cfg);
    report["input"] = {{"records", table.size()}, {"rejected", table.rejected()}};
    const auto ec = estimate_config(cfg);
    const auto r = estimate_productivity(table, ec);
    const auto theory = derive_productivity(cfg.params);
    report["results"] = productivity_json(r, table.scales());
    report["theory"] = productivity_params_json(theory);

    // Tilde parameters implied by the exponents estimated from the same data.
    json from_est;
    try {
        const auto e = estimate_all(table, ec);
        const DslParams hat{e.alpha_fit.slope, e.beta_fit.slope, e.p.value, e.phi_y.tilt_hat, e.phi_l.tilt_hat};
        from_est = {{"alpha", hat.alpha}, {"beta", hat.beta}, {"p", hat.p}};
        from_est["derived"] = productivity_params_json(derive_productivity(hat));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularProductivity) throw;
        from_est["error"] = error_json(e);
    }
    report["theory_from_estimates"] = from_est;

    write_productivity_series(os, table, r, cfg.params);
    out << "beta_t = " << fixed(r.slope_fit.slope) << " +- " << fixed(r.slope_fit.slope_se) << "  (theory "
        << fixed(theory.beta_t) << ")\n"
        << "gamma1 = " << fixed(r.gamma1_hat) << " +- " << fixed(r.gamma1_se) << "  (theory " << fixed(theory.gamma1)
        << ")\n";
    for (const auto& w : r.warnings) out << "warning: " << w << "\n";
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, OutputSet&, json& report, std::ostream& out, std::ostream& err) {
    const auto sc = cfg.scales();
    if (cfg.mu_L) {
        const auto ledger = powerlaw_identity_suite({*cfg.mu_L, *cfg.mu_Y}, sc);
        report["results"] = {{"branch", "power_law"}, {"identities", ledger_json(ledger)}};
        for (const auto& c : ledger.checks) {
            out << (c.pass ? "PASS " : "FAIL ") << c.name << " = " << c.lhs << "\n";
        }
        report_failed(ledger, err);
        return ledger.all_pass() ? kExitOk : kExitVerification;
    }

    if (validate_params(cfg.params) != Branch::lognormal) {
        throw Error(ErrorCode::InvalidArgument,
                    "alpha beta = 1 selects the power-law branch; pass --mu-l and --mu-y to verify it");
    }
    const auto phi_Y = cfg.phi_y ? PhiGrid::read_csv(*cfg.phi_y).as_function() : closed_form_phi_Y(cfg.params, sc);
    const auto phi_L = cfg.phi_l ? PhiGrid::read_csv(*cfg.phi_l).as_function() : closed_form_phi_L(cfg.params, sc);
    const auto residual = feq_residual(phi_Y, phi_L, cfg.params.alpha, cfg.params.beta, sc, EvalGrid::around(sc));
    const auto ledger = identity_suite(cfg.params);
    const bool feq_ok = residual.max_relative < cfg.tolerance;
    report["results"] = {{"branch", "lognormal"},
                         {"phi_y", cfg.phi_y ? "grid" : "closed_form"},
                         {"phi_l", cfg.phi_l ? "grid" : "closed_form"},
                         {"functional_equation", residual_json(residual, cfg.tolerance)},
                         {"identities", ledger_json(ledger)}};
    out << (feq_ok ? "PASS" : "FAIL") << " functional_equation: max relative residual " << residual.max_relative
        << " over " << residual.count << " points (" << residual.skipped << " skipped)\n";
    out << (ledger.all_pass() ? "PASS" : "FAIL") << " identities: " << ledger.checks.size() << " checks\n";
    if (!feq_ok) {
        err << "FAIL functional_equation: max relative residual " << residual.max_relative << " >= tolerance "
            << cfg.tolerance << "\n";
    }
    report_failed(ledger, err);
    return feq_ok && ledger.all_pass() ? kExitOk : kExitVerification;
}

struct SummaryRow {
    std::string quantity;
    double published = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    std::optional<double> value;
    double se = 0.0;
    std::string status;  // pass, fail, insufficient_precision
    std::string note;
};

void judge(SummaryRow& row) {
    if (!row.value) {
        row.status = "insufficient_precision";
    } else if (row.se > 0.5 * row.tolerance || !std::isfinite(*row.value)) {
        row.status = "insufficient_precision";
        if (row.note.empty()) row.note = "standard error exceeds half the tolerance";
    } else {
        row.status = std::abs(*row.value - row.target) <= row.tolerance ? "pass" : "fail";
    }
}

bool precision_error(ErrorCode c) {
    return c == ErrorCode::InsufficientData || c == ErrorCode::NoBinsSurvive || c == ErrorCode::NegativeCurvature ||
           c == ErrorCode::EmptyTable || c == ErrorCode::DegenerateX;
}

int cmd_reproduce(const RunConfig& cfg, OutputSet& os, json& report, std::ostream& out) {
    const auto sc = cfg.scales();
    const bool published_run = cfg.params.alpha == published_params().alpha && cfg.params.beta == published_params().beta &&
                           cfg.params.p == published_params().p && cfg.params.q == 0.0 && cfg.params.s == 0.0;
    const auto truth = derive_productivity(cfg.params);

    // Arithmetic of the derived parameters against the printed values.
    std::vector<SummaryRow> rows;
    auto arithmetic = [&](const char* name, double published, double tol, double value) {
        SummaryRow row{name, published, published, tol, value, 0.0, "", "derived from the configured parameters"};
        row.status = std::abs(value - published) <= tol ? "pass" : "fail";
        if (!published_run) row.status = "not_applicable";
        rows.push_back(row);
    };
    arithmetic("alpha_t", 0.037, 1e-12, truth.alpha_t);
    arithmetic("beta_t_theory", 0.072, 0.007, truth.beta_t);
    arithmetic("p_t_theory", 6.353, 0.680, truth.p_t);
    arithmetic("gamma1_theory", 0.456, 0.017, truth.gamma1);

    SynthesisSpec spec;
    spec.params = cfg.params;
    spec.scales = sc;
    spec.n = cfg.n;
    spec.seed = cfg.seed;
    spec.round_labor = cfg.round_labor;
    const auto table = sample_firms(spec);
    const auto ec = estimate_config(cfg);

    auto recovered = [&](const char* name, double published, double target, double tol) {
        SummaryRow row{name, published, published_run ? published : target, tol, std::nullopt, 0.0, "", ""};
        return row;
    };
    SummaryRow alpha = recovered("alpha", 1.037, cfg.params.alpha, 0.02);
    SummaryRow beta = recovered("beta", 0.655, cfg.params.beta, 0.02);
    SummaryRow p = recovered("p", 0.698, cfg.params.p, 0.05);
    SummaryRow beta_t = recovered("beta_t", 0.072, truth.beta_t, 0.01);
    SummaryRow gamma1 = recovered("gamma1", 0.456, truth.gamma1, 0.02);

    std::optional<EstimateResult> est;
    try {
        est = estimate_all(table, ec);
        report["estimate"] = estimate_json(*est, sc);
        alpha.value = est->alpha_fit.slope;
        alpha.se = est->alpha_fit.slope_se;
        beta.value = est->beta_fit.slope;
        beta.se = est->beta_fit.slope_se;
        p.value = est->p.value;
        p.se = est->p.se;
    } catch (const Error& e) {
        if (!precision_error(e.code())) throw;
        report["estimate"] = {{"error", error_json(e)}};
        for (auto* row : {&alpha, &beta, &p}) row->note = e.what();
    }
    std::optional<ProductivityEstimate> prod;
    try {
        prod = estimate_productivity(table, ec);
        report["productivity"] = productivity_json(*prod, sc);
        beta_t.value = prod->slope_fit.slope;
        beta_t.se = prod->slope_fit.slope_se;
        gamma1.value = prod->gamma1_hat;
        gamma1.se = prod->gamma1_se;
    } catch (const Error& e) {
        if (!precision_error(e.code())) throw;
        report["productivity"] = {{"error", error_json(e)}};
        for (auto* row : {&beta_t, &gamma1}) row->note = e.what();
    }
    for (auto* row : {&alpha, &beta, &p, &beta_t, &gamma1}) {
        judge(*row);
        rows.push_back(*row);
    }

    const auto ledger = identity_suite(cfg.params);
    const auto residual = feq_residual(closed_form_phi_Y(cfg.params, sc), closed_form_phi_L(cfg.params, sc),
                                       cfg.params.alpha, cfg.params.beta, sc, EvalGrid::around(sc));
    const auto mc = mc_cross_check(cfg.params, cfg.n, cfg.seed);
    report["identities"] = ledger_json(ledger);
    report["functional_equation"] = residual_json(residual, cfg.tolerance);
    report["monte_carlo"] = mc_json(mc);

    if (est) write_estimate_series(os, table, *est);
    if (prod) write_productivity_series(os, table, *prod, cfg.params);

    json summary = json::array();
    bool failed = false;
    char line[160];
    std::snprintf(line, sizeof line, "%-14s %9s %9s %9s %9s %9s  %s\n", "quantity", "published", "target", "value", "se",
                  "tol", "status");
    out << line;
    for (const auto& row : rows) {
        json j = {{"quantity", row.quantity}, {"published", row.published},       {"target", row.target},
                  {"tolerance", row.tolerance}, {"status", row.status}};
        j["value"] = row.value ? json(*row.value) : json(nullptr);
        j["se"] = row.se;
        if (!row.note.empty()) j["note"] = row.note;
        summary.push_back(j);
        failed = failed || row.status == "fail";
        std::snprintf(line, sizeof line, "%-14s %9.4f %9.4f %9s %9.4f %9.4f  %s\n", row.quantity.c_str(), row.published,
                      row.target, row.value ? fixed(*row.value).c_str() : "-", row.se, row.tolerance,
                      row.status.c_str());
        out << line;
    }
    const bool feq_ok = residual.max_relative < cfg.tolerance;
    out << (ledger.all_pass() ? "pass" : "fail") << " identities (" << ledger.checks.size() << " checks)\n"
        << (feq_ok ? "pass" : "fail") << " functional equation (max residual " << residual.max_relative << ")\n"
        << (mc.insufficient_precision ? "insufficient_precision" : (mc.all_pass() ? "pass" : "fail"))
        << " Monte Carlo cross-check\n";
    report["summary"] = summary;
    failed = failed || !ledger.all_pass() || !feq_ok || !mc.all_pass();
    report["status"] = failed ? "fail" : "pass";
    return failed ? kExitVerification : kExitOk;
}

// ---- flag plumbing ---------------------------------------------------------

struct Flags {
    std::string config;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double alpha = 0, beta = 0, p = 0, q = 0, s = 0, y0 = 0, l0 = 0;
    std::vector<double> l_range, y_range, c_range;
    std::size_t bins = 0;
    double bandwidth = 0;
    std::size_t bootstrap = 0;
    std::uint64_t bootstrap_seed = 0;
    std::string input, out, phi_y, phi_l;
    double mu_l = 0, mu_y = 0, tolerance = 0;
    bool round_labor = false;
};

struct Overlay {
    CLI::Option* opt;
    std::function<void(RunConfig&)> apply;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Double scaling law toolkit: synthetic firm data, exponent estimation and verification", "dsl"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    Flags f;
    std::vector<Overlay> overlays;
    auto add = [&](CLI::Option* o, std::function<void(RunConfig&)> apply) { overlays.push_back({o, std::move(apply)}); };

    app.add_option("--config", f.config, "JSON run configuration; flags override its values");
    add(app.add_option("--seed", f.seed, "random seed"), [&](RunConfig& c) { c.seed = f.seed; });
    add(app.add_option("--n", f.n, "number of synthetic firms"), [&](RunConfig& c) { c.n = f.n; });
    add(app.add_option("--alpha", f.alpha, "exponent of E(y|l)"), [&](RunConfig& c) { c.params.alpha = f.alpha; });
    add(app.add_option("--beta", f.beta, "exponent of E(l|y)"), [&](RunConfig& c) { c.params.beta = f.beta; });
    add(app.add_option("--p", f.p, "curvature parameter"), [&](RunConfig& c) { c.params.p = f.p; });
    add(app.add_option("--q", f.q, "linear coefficient of ln Phi_Y"), [&](RunConfig& c) { c.params.q = f.q; });
    add(app.add_option("--s", f.s, "linear coefficient of ln Phi_L"), [&](RunConfig& c) { c.params.s = f.s; });
    add(app.add_option("--y0", f.y0, "reference scale of Y"), [&](RunConfig& c) { c.Y0 = f.y0; });
    add(app.add_option("--l0", f.l0, "reference scale of L"), [&](RunConfig& c) { c.L0 = f.l0; });
    add(app.add_option("--l-range", f.l_range, "fit range of L in log10 units: LO HI")->expected(2),
        [&](RunConfig& c) { c.l_range = Interval{f.l_range[0], f.l_range[1]}; });
    add(app.add_option("--y-range", f.y_range, "fit range of Y in log10 units: LO HI")->expected(2),
        [&](RunConfig& c) { c.y_range = Interval{f.y_range[0], f.y_range[1]}; });
    add(app.add_option("--c-range", f.c_range, "fit range of C = Y/L in log10 units: LO HI")->expected(2),
        [&](RunConfig& c) { c.c_range = Interval{f.c_range[0], f.c_range[1]}; });
    add(app.add_option("--bins", f.bins, "conditioning bins"), [&](RunConfig& c) { c.bins = f.bins; });
    add(app.add_option("--bandwidth", f.bandwidth, "kernel bandwidth in log10 units"),
        [&](RunConfig& c) { c.bandwidth = f.bandwidth; });
    add(app.add_option("--bootstrap", f.bootstrap, "bootstrap replicates"),
        [&](RunConfig& c) { c.bootstrap = f.bootstrap; });
    add(app.add_option("--bootstrap-seed", f.bootstrap_seed, "bootstrap seed"),
        [&](RunConfig& c) { c.bootstrap_seed = f.bootstrap_seed; });
    add(app.add_option("--input", f.input, "firm_id,Y,L CSV"), [&](RunConfig& c) { c.input = f.input; });
    add(app.add_option("--out", f.out, "output directory"), [&](RunConfig& c) { c.out = f.out; });
    add(app.add_option("--mu-l", f.mu_l, "power-law tail exponent of L"), [&](RunConfig& c) { c.mu_L = f.mu_l; });
    add(app.add_option("--mu-y", f.mu_y, "power-law tail exponent of Y"), [&](RunConfig& c) { c.mu_Y = f.mu_y; });
    add(app.add_option("--phi-y", f.phi_y, "x,phi grid CSV for Phi_Y"), [&](RunConfig& c) { c.phi_y = f.phi_y; });
    add(app.add_option("--phi-l", f.phi_l, "x,phi grid CSV for Phi_L"), [&](RunConfig& c) { c.phi_l = f.phi_l; });
    add(app.add_option("--tolerance", f.tolerance, "functional-equation residual threshold"),
        [&](RunConfig& c) { c.tolerance = f.tolerance; });
    add(app.add_flag("--round-labor", f.round_labor, "round synthetic labor to whole workers"),
        [&](RunConfig& c) { c.round_labor = f.round_labor; });

    const std::vector<std::pair<const char*, const char*>> commands{
        {"generate", "write a seeded synthetic firm table"},
        {"estimate", "estimate alpha, beta and p from a firm table"},
        {"productivity", "estimate the labor-productivity law from a firm table"},
        {"verify", "check the functional equation and the identity web"},
        {"reproduce", "generate, estimate and verify in one run"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        if (!f.config.empty()) cfg = load_config(f.config);
        for (const auto& o : overlays) {
            if (o.opt->count() > 0) o.apply(cfg);
        }
        validate(cfg);
        if ((command == "estimate" || command == "productivity") && !cfg.input) {
            throw Error(ErrorCode::InvalidArgument, command + " needs --input");
        }
    } catch (const Error& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    }

    std::optional<OutputSet> os;
    json report = base_report(command, cfg);
    try {
        os.emplace(cfg.out);
        int code = kExitOk;
        if (command == "generate") code = cmd_generate(cfg, *os, report, out);
        else if (command == "estimate") code = cmd_estimate(cfg, *os, report, out);
        else if (command == "productivity") code = cmd_productivity(cfg, *os, report, out);
        else if (command == "verify") code = cmd_verify(cfg, *os, report, out, err);
        else code = cmd_reproduce(cfg, *os, report, out);
        report["exit_code"] = code;
        write_report(*os, report);
        return code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        const int code = exit_code_for(e.code());
        if (os) {
            report["error"] = error_json(e);
            report["exit_code"] = code;
            try {
                write_report(*os, report);
            } catch (const Error&) {
            }
        }
        return code;
    }
}

}  // namespace dsl::cli
