#include <doctest.h>

#include <cmath>
#include <sstream>

#include "dsl/error.hpp"
#include "dsl/verify/feq.hpp"
#include "dsl/verify/identities.hpp"
#include "dsl/verify/mc_check.hpp"
#include "dsl/verify/phi_grid.hpp"

using namespace dsl;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no dsl::Error thrown");
    return ErrorCode::InvalidArgument;
}

ScalingFunction scaled(const ScalingFunction& phi, double k) {
    return {[phi, k](double x) { return k * phi(x); }, phi.lo, phi.hi};
}

}  // namespace

TEST_CASE("closed-form scaling functions satisfy the functional equation") {
    const auto pp = published_params();
    const auto sc = default_scales();
    const auto phi_Y = closed_form_phi_Y(pp, sc);
    const auto phi_L = closed_form_phi_L(pp, sc);
    const auto grid = EvalGrid::around(sc);
    const auto r = feq_residual(phi_Y, phi_L, pp.alpha, pp.beta, sc, grid);
    CHECK(r.count == 2500);
    CHECK(r.skipped == 0);
    CHECK(r.max_relative < 1e-10);
    CHECK(r.mean_relative <= r.max_relative);

    SUBCASE("tilted and symmetric parameter sets") {
        for (const DslParams p : {DslParams{0.9, 0.9, 1.0, 0.0, 0.0}, DslParams{1.3, 0.4, 0.5, 0.7, -1.2}}) {
            const auto res = feq_residual(closed_form_phi_Y(p, sc), closed_form_phi_L(p, sc), p.alpha, p.beta, sc, grid);
            CHECK(res.max_relative < 1e-10);
        }
    }
    SUBCASE("multiplying a scaling function by a constant changes nothing") {
        for (double k : {1e-3, 1.0, 1e3}) {
            const auto rk = feq_residual(scaled(phi_Y, k), scaled(phi_L, 1.0 / k), pp.alpha, pp.beta, sc, grid);
            CHECK(std::abs(rk.max_relative - r.max_relative) < 1e-12);
            CHECK(std::abs(rk.mean_relative - r.mean_relative) < 1e-12);
        }
    }
    SUBCASE("moving the reference point") {
        const auto moved = ReferenceScales::make(sc.Y0 * std::exp(0.7), sc.L0 * std::exp(-0.4));
        const auto rm = feq_residual(phi_Y, phi_L, pp.alpha, pp.beta, moved, EvalGrid::around(moved));
        CHECK(rm.max_relative < 1e-9);
    }
    SUBCASE("mismatched p is detected") {
        DslParams other = pp;
        other.p = 1.0;
        const auto rm = feq_residual(phi_Y, closed_form_phi_L(other, sc), pp.alpha, pp.beta, sc, grid);
        CHECK(rm.max_relative > 0.1);
    }
}

TEST_CASE("power-law construction satisfies the functional equation") {
    const auto sc = default_scales();
    ScalingFunction phi_Y{[Y0 = sc.Y0](double Y) {
        const double y = std::log(Y / Y0);
        return (2.0 + std::tanh(y)) * std::exp(-0.1 * y * y);
    }};
    for (double a : {-5.0, 0.0, 1.7}) {
        const auto phi_L = powerlaw_phi_L(phi_Y, 2.0, a, sc);
        const auto r = feq_residual(phi_Y, phi_L, 2.0, 0.5, sc, EvalGrid::around(sc));
        CHECK(r.max_relative < 1e-8);
        CHECK(r.count == 2500);
    }
    SUBCASE("the construction fails off the power-law branch") {
        const auto phi_L = powerlaw_phi_L(phi_Y, 1.037, -1.0, sc);
        const auto r = feq_residual(phi_Y, phi_L, 1.037, 0.655, sc, EvalGrid::around(sc));
        CHECK(r.max_relative > 0.1);
    }
}

TEST_CASE("PhiGrid") {
    const auto pp = published_params();
    const auto sc = default_scales();
    const auto phi_Y = closed_form_phi_Y(pp, sc);

    SUBCASE("log-log interpolation error of a dense tabulation") {
        const auto g = PhiGrid::from_function(phi_Y.f, sc.Y0 * std::exp(-8.0), sc.Y0 * std::exp(8.0), 7001);
        double worst = 0.0;
        for (int i = 0; i < 997; ++i) {
            const double Y = sc.Y0 * std::exp(-7.9 + 15.8 * i / 996.0);
            worst = std::max(worst, std::abs(g(Y) / phi_Y(Y) - 1.0));
        }
        // ln phi is quadratic with curvature beta p; the chord error peaks at beta p h^2 / 4.
        const double h = 16.0 / 7000.0;
        CHECK(worst <= pp.beta * pp.p * h * h / 4.0 * 1.01);
        CHECK(worst < 1e-6);
    }
    SUBCASE("grids reproduce the closed-form residual") {
        const auto phi_L = closed_form_phi_L(pp, sc);
        const auto gy = PhiGrid::from_function(phi_Y.f, sc.Y0 * std::exp(-12.0), sc.Y0 * std::exp(12.0), 20001);
        const auto gl = PhiGrid::from_function(phi_L.f, sc.L0 * std::exp(-12.0), sc.L0 * std::exp(12.0), 20001);
        const auto r = feq_residual(gy.as_function(), gl.as_function(), pp.alpha, pp.beta, sc, EvalGrid::around(sc));
        CHECK(r.skipped == 0);
        CHECK(r.max_relative < 1e-5);
    }
    SUBCASE("a corrupted grid is detected") {
        const auto phi_L = closed_form_phi_L(pp, sc);
        const auto gy = PhiGrid::from_function(phi_Y.f, sc.Y0 * std::exp(-12.0), sc.Y0 * std::exp(12.0), 2001);
        auto values = gy.phi();
        for (std::size_t i = 900; i < 1100; ++i) values[i] *= 1.5;
        const PhiGrid bad(gy.x(), values);
        const auto r = feq_residual(bad.as_function(), phi_L, pp.alpha, pp.beta, sc, EvalGrid::around(sc));
        CHECK(r.max_relative > 0.1);
    }
    SUBCASE("points outside the grid are skipped") {
        const auto phi_L = closed_form_phi_L(pp, sc);
        const auto narrow = PhiGrid::from_function(phi_Y.f, sc.Y0 * std::exp(-2.0), sc.Y0 * std::exp(2.0), 101);
        const auto r = feq_residual(narrow.as_function(), phi_L, pp.alpha, pp.beta, sc, EvalGrid::around(sc));
        CHECK(r.skipped > 0);
        CHECK(r.count + r.skipped == 2500);
        const auto tiny = PhiGrid::from_function(phi_Y.f, sc.Y0 * 2.0, sc.Y0 * 2.001, 3);
        CHECK(code_of([&] {
                  feq_residual(tiny.as_function(), phi_L, pp.alpha, pp.beta, sc, EvalGrid::around(sc));
              }) == ErrorCode::DomainExhausted);
    }
    SUBCASE("csv round trip and validation") {
        const auto g = PhiGrid::from_function(phi_Y.f, sc.Y0 / 10.0, sc.Y0 * 10.0, 17);
        std::stringstream buf;
        g.write_csv(buf);
        const auto back = PhiGrid::read_csv(buf);
        CHECK(back.x() == g.x());
        CHECK(back.phi() == g.phi());
        std::istringstream bad_header("Y,phi\n1,2\n2,3\n");
        CHECK(code_of([&] { PhiGrid::read_csv(bad_header); }) == ErrorCode::MalformedHeader);
        CHECK(code_of([&] { PhiGrid({1.0, 1.0}, {1.0, 2.0}); }) == ErrorCode::InvalidArgument);
        CHECK(code_of([&] { PhiGrid({1.0, 2.0}, {1.0, 0.0}); }) == ErrorCode::InvalidArgument);
        CHECK(code_of([&] { g(sc.Y0 * 100.0); }) == ErrorCode::Domain);
    }
}

TEST_CASE("identity suite") {
    SUBCASE("published parameters") {
        const auto ledger = identity_suite(published_params());
        CHECK(ledger.all_pass());
        CHECK(ledger.checks.size() >= 20);
        REQUIRE(ledger.find("gamma1") != nullptr);
        CHECK(ledger.find("gamma1")->rhs == doctest::Approx(0.4556).epsilon(1e-3));
    }
    SUBCASE("symmetric case") {
        CHECK(identity_suite({0.9, 0.9, 1.0, 0.0, 0.0}).all_pass());
    }
    SUBCASE("parameter grid with tilts") {
        for (double a : {0.8, 1.037, 1.3}) {
            for (double b : {0.4, 0.655}) {
                for (double p : {0.5, 0.698, 1.0}) {
                    for (double q : {0.0, 0.5}) {
                        const auto ledger = identity_suite({a, b, p, q, -q});
                        for (const auto& c : ledger.checks) {
                            INFO(c.name, " alpha=", a, " beta=", b, " p=", p);
                            CHECK(c.pass);
                        }
                    }
                }
            }
        }
    }
    SUBCASE("a corrupted gamma1 fails alone") {
        auto prod = derive_productivity(published_params());
        prod.gamma1 *= 1.01;
        const auto ledger = identity_suite(published_params(), prod);
        for (const auto& c : ledger.checks) {
            INFO(c.name);
            CHECK(c.pass == (c.name != "gamma1"));
        }
    }
    SUBCASE("deterministic") {
        const auto a = identity_suite(published_params());
        const auto b = identity_suite(published_params());
        REQUIRE(a.checks.size() == b.checks.size());
        for (std::size_t i = 0; i < a.checks.size(); ++i) {
            CHECK(a.checks[i].name == b.checks[i].name);
            CHECK(a.checks[i].lhs == b.checks[i].lhs);
        }
    }
    SUBCASE("alpha = 1 skips the productivity identities") {
        const auto ledger = identity_suite({1.0, 0.5, 1.0, 0.0, 0.0});
        CHECK(ledger.all_pass());
        CHECK(ledger.find("beta_t") == nullptr);
    }
    SUBCASE("off the lognormal branch") {
        CHECK(code_of([] { identity_suite({2.0, 0.5, 1.0, 0.0, 0.0}); }) == ErrorCode::NonNormalizable);
    }
}

TEST_CASE("power-law identity suite") {
    const auto ledger = powerlaw_identity_suite({2.0, 1.0});
    CHECK(ledger.all_pass());
    CHECK(ledger.find("alpha")->lhs == 2.0);
    CHECK(ledger.find("beta")->lhs == 0.5);
    CHECK(ledger.find("a")->lhs == -5.0);
    for (double mL : {0.5, 1.0, 1.3, 3.0}) {
        for (double mY : {0.7, 1.0, 2.2}) CHECK(powerlaw_identity_suite({mL, mY}).all_pass());
    }
}

TEST_CASE("Monte Carlo cross-check") {
    SUBCASE("a million draws agree with the analytic model") {
        const auto r = mc_cross_check(published_params(), 1000000, 2024);
        CHECK_FALSE(r.insufficient_precision);
        for (const auto& c : r.checks) {
            INFO(c.name, " ", c.estimate, " vs ", c.expected, " se ", c.se);
            CHECK(c.pass);
        }
        CHECK(r.checks.size() == 7);
        CHECK(r.all_pass());
    }
    SUBCASE("ten draws are flagged, not failed") {
        const auto r = mc_cross_check(published_params(), 10, 1);
        CHECK(r.insufficient_precision);
        CHECK(r.all_pass());
    }
}
