#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

#include "dsl/densities.hpp"
#include "dsl/error.hpp"
#include "dsl/estimator/regression.hpp"
#include "dsl/sampler.hpp"

using namespace dsl;

namespace {

bool same_tables(const FirmTable& a, const FirmTable& b) {
    if (a.size() != b.size()) return false;
    return std::memcmp(a.records().data(), b.records().data(), a.size() * sizeof(FirmRecord)) == 0;
}

}  // namespace

TEST_CASE("sample_firms is a pure function of its inputs") {
    SynthesisSpec spec;
    spec.n = 2000;
    spec.seed = 42;
    const auto a = sample_firms(spec);
    const auto b = sample_firms(spec);
    CHECK(same_tables(a, b));
    spec.seed = 43;
    CHECK_FALSE(same_tables(a, sample_firms(spec)));
    CHECK(std::all_of(a.records().begin(), a.records().end(),
                      [](const FirmRecord& r) { return r.Y > 0.0 && r.L > 0.0; }));
    CHECK(a.records().front().firm_id == 1);
    CHECK(a.records().back().firm_id == 2000);
}

TEST_CASE("sample_firms rejects invalid specs") {
    SynthesisSpec spec;
    spec.n = 0;
    CHECK_THROWS_AS(sample_firms(spec), Error);
    spec.n = 10;
    spec.params = {2.0, 0.5, 1.0, 0.0, 0.0};
    try {
        sample_firms(spec);
        FAIL("power-law branch cannot be sampled");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonNormalizable);
    }
    spec.params = {2.0, 1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(sample_firms(spec), Error);
}

TEST_CASE("sampled correlation and conditional variance") {
    SynthesisSpec spec;
    spec.seed = 7;
    const auto t = sample_firms(spec);
    const auto m = sample_moments(t);
    const double rho = m.cov_ly / std::sqrt(m.cov_ll * m.cov_yy);
    CHECK(std::abs(rho - 0.824) <= 0.004);

    // Var(y|l) pooled across narrow l bins.
    const auto l = t.log_l();
    const auto y = t.log_y();
    const double width = 0.1;
    std::vector<double> s1(200, 0.0), s2(200, 0.0), cnt(200, 0.0);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double k = std::floor((l[i] + 5.0) / width);
        if (k < 0 || k >= 200) continue;
        const auto b = static_cast<std::size_t>(k);
        s1[b] += y[i];
        s2[b] += y[i] * y[i];
        cnt[b] += 1.0;
    }
    double ss = 0.0, dof = 0.0;
    for (std::size_t b = 0; b < 200; ++b) {
        if (cnt[b] < 2) continue;
        ss += s2[b] - s1[b] * s1[b] / cnt[b];
        dof += cnt[b] - 1.0;
    }
    CHECK(std::abs(ss / dof - 1.094) <= 0.02);
}

TEST_CASE("sample_moments") {
    SUBCASE("needs two records") {
        FirmTable one({{1, 10.0, 2.0}}, default_scales());
        try {
            sample_moments(one);
            FAIL("expected EmptyTable");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyTable);
        }
    }

    SUBCASE("CLT agreement with the analytic covariance at n = 1e6") {
        SynthesisSpec spec;
        spec.n = 1000000;
        spec.seed = 2024;
        const auto m = sample_moments(sample_firms(spec));
        const auto g = to_gaussian(spec.params);
        const double n = static_cast<double>(spec.n);
        auto cov_se = [&](double sii, double sjj, double sij) { return std::sqrt((sii * sjj + sij * sij) / n); };
        CHECK(std::abs(m.cov_ll - g.sig_ll) <= 3 * cov_se(g.sig_ll, g.sig_ll, g.sig_ll));
        CHECK(std::abs(m.cov_yy - g.sig_yy) <= 3 * cov_se(g.sig_yy, g.sig_yy, g.sig_yy));
        CHECK(std::abs(m.cov_ly - g.sig_ly) <= 3 * cov_se(g.sig_ll, g.sig_yy, g.sig_ly));
        CHECK(std::abs(m.mean_l - g.mu_l) <= 3 * std::sqrt(g.sig_ll / n));
        CHECK(std::abs(m.mean_y - g.mu_y) <= 3 * std::sqrt(g.sig_yy / n));
        const double mean_c = m.mean_y - m.mean_l;
        CHECK(std::abs(mean_c - g.mu_c()) <= 3 * std::sqrt(g.var_c() / n));
    }
}

TEST_CASE("sampled y marginal passes a one-sample KS test against the closed form") {
    const DslParams pp = published_params();
    // CDF of y implied by the log-quadratic marginal of Y.
    const auto coef = marginal_Y_coefficients(pp);
    const double var = -0.5 / coef.quadratic;
    const double mu = (coef.linear + 1.0) * var;
    auto cdf = [&](double y) { return 0.5 * std::erfc(-(y - mu) / std::sqrt(2.0 * var)); };

    for (std::uint64_t seed : {1u, 2u, 3u}) {
        SynthesisSpec spec;
        spec.seed = seed;
        const auto t = sample_firms(spec);
        std::vector<double> y(t.log_y().begin(), t.log_y().end());
        std::sort(y.begin(), y.end());
        const double n = static_cast<double>(y.size());
        double d = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double f = cdf(y[i]);
            d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
        }
        CHECK(d < 1.628 / std::sqrt(n));  // 1% critical value
    }
}

TEST_CASE("rounding labor barely moves the alpha estimate") {
    SynthesisSpec spec;
    spec.seed = 11;
    const auto raw = sample_firms(spec);
    spec.round_labor = true;
    const auto rounded = sample_firms(spec);
    CHECK(std::all_of(rounded.records().begin(), rounded.records().end(),
                      [](const FirmRecord& r) { return r.L == std::round(r.L) && r.L >= 1.0; }));
    const Interval range{-1.0, 6.0};
    const double a_raw = linear_fit(raw.log_l(), raw.log_y(), range).slope;
    const double a_round = linear_fit(rounded.log_l(), rounded.log_y(), range).slope;
    CHECK(std::abs(a_raw - a_round) < 0.01);
}
