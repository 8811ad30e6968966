#include "dsl/verify/mc_check.hpp"

#include <algorithm>
#include <cmath>

#include "dsl/error.hpp"
#include "dsl/estimator/regression.hpp"
#include "dsl/sampler.hpp"

namespace dsl {

namespace {

McCheck check(std::string name, double estimate, double expected, double se) {
    McCheck c;
    c.name = std::move(name);
    c.estimate = estimate;
    c.expected = expected;
    c.se = se;
    c.pass = std::abs(estimate - expected) <= 3.0 * se;
    return c;
}

}  // namespace

bool McReport::all_pass() const {
    if (insufficient_precision) return true;
    return std::all_of(checks.begin(), checks.end(), [](const McCheck& c) { return c.pass; });
}

McReport mc_cross_check(const DslParams& params, std::size_t n, std::uint64_t seed) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "Monte Carlo check needs the lognormal branch");
    }
    McReport report;
    report.n = n;
    report.seed = seed;
    report.insufficient_precision = n < kMinMonteCarlo;

    SynthesisSpec spec;
    spec.params = params;
    spec.n = n;
    spec.seed = seed;
    const auto table = sample_firms(spec);
    if (n < 3) return report;

    const auto m = sample_moments(table);
    const auto g = to_gaussian(params);
    const double dn = static_cast<double>(n);
    // Large-sample standard errors of Gaussian sample covariances.
    auto cov_se = [dn](double sii, double sjj, double sij) { return std::sqrt((sii * sjj + sij * sij) / dn); };

    report.checks.push_back(check("mean_l", m.mean_l, g.mu_l, std::sqrt(g.sig_ll / dn)));
    report.checks.push_back(check("mean_y", m.mean_y, g.mu_y, std::sqrt(g.sig_yy / dn)));
    report.checks.push_back(check("mean_c", m.mean_y - m.mean_l, g.mu_c(), std::sqrt(g.var_c() / dn)));
    report.checks.push_back(check("cov_ll", m.cov_ll, g.sig_ll, cov_se(g.sig_ll, g.sig_ll, g.sig_ll)));
    report.checks.push_back(check("cov_yy", m.cov_yy, g.sig_yy, cov_se(g.sig_yy, g.sig_yy, g.sig_yy)));
    report.checks.push_back(check("cov_ly", m.cov_ly, g.sig_ly, cov_se(g.sig_ll, g.sig_yy, g.sig_ly)));

    const auto fit = linear_fit(table.log_c(), table.log_l());
    report.checks.push_back(check("slope_l_on_c", fit.slope, g.cov_lc() / g.var_c(), fit.slope_se));
    return report;
}

}  // namespace dsl
