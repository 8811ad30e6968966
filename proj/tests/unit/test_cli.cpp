#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <unistd.h>

#include "dsl/cli/commands.hpp"
#include "dsl/cli/config.hpp"
#include "dsl/cli/report.hpp"
#include "dsl/params.hpp"
#include "dsl/verify/phi_grid.hpp"

using namespace dsl;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result dsl_run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json report_of(const fs::path& dir) { return json::parse(slurp(dir / "report.json")); }

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag = "run") {
        path = fs::temp_directory_path() / ("dsl_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

// Shared published-parameter sample written once through the CLI.
const std::string& published_csv() {
    static const TempDir dir("published");
    static const std::string path = [] {
        const auto r = dsl_run({"generate", "--n", "100000", "--seed", "5", "--out", dir / "gen"});
        REQUIRE(r.code == 0);
        return dir / "gen/firms.csv";
    }();
    return path;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream(path, std::ios::binary) << content;
}

void save(const PhiGrid& g, const std::string& path) {
    std::ofstream out(path);
    g.write_csv(out);
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("sha256 digests match published test vectors") {
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("generate") {
    TempDir tmp;
    SUBCASE("same seed gives byte-identical files") {
        REQUIRE(dsl_run({"generate", "--n", "5", "--seed", "42", "--out", tmp / "a"}).code == 0);
        REQUIRE(dsl_run({"generate", "--n", "5", "--seed", "42", "--out", tmp / "b"}).code == 0);
        const auto a = slurp(tmp / "a/firms.csv");
        CHECK(a == slurp(tmp / "b/firms.csv"));
        CHECK(a.rfind("firm_id,Y,L\n", 0) == 0);
        CHECK(std::count(a.begin(), a.end(), '\n') == 6);
        REQUIRE(dsl_run({"generate", "--n", "5", "--seed", "43", "--out", tmp / "c"}).code == 0);
        CHECK(a != slurp(tmp / "c/firms.csv"));
    }
    SUBCASE("manifest lists every emitted file with its digest") {
        REQUIRE(dsl_run({"generate", "--n", "50", "--out", tmp / "m"}).code == 0);
        const auto rep = report_of(tmp / "m");
        CHECK(rep["tool"] == "dsl");
        CHECK(rep["command"] == "generate");
        CHECK(rep["config"]["n"] == 50);
        REQUIRE(rep["manifest"].size() == 1);
        const auto body = slurp(tmp / "m/firms.csv");
        CHECK(rep["manifest"][0]["file"] == "firms.csv");
        CHECK(rep["manifest"][0]["bytes"] == body.size());
        CHECK(rep["manifest"][0]["sha256"] == cli::sha256_hex(body));
        for (const auto& e : fs::directory_iterator(tmp.path / "m")) CHECK(e.path().extension() != ".tmp");
    }
    SUBCASE("n = 1e5 writes header plus 1e5 rows") {
        const auto body = slurp(published_csv());
        CHECK(std::count(body.begin(), body.end(), '\n') == 100001);
    }
    SUBCASE("parameters off the lognormal branch are a config error") {
        CHECK(dsl_run({"generate", "--alpha", "2", "--beta", "2", "--out", tmp / "x"}).code == cli::kExitConfig);
        CHECK(dsl_run({"generate", "--alpha", "2", "--beta", "0.5", "--out", tmp / "x"}).code == cli::kExitConfig);
    }
}

TEST_CASE("config file and flag precedence") {
    TempDir tmp;
    write_file(tmp / "cfg.json", R"({"seed": 9, "n": 20, "bins": 5, "l_range": [0.5, 2.0]})");
    SUBCASE("file values apply and flags override them") {
        REQUIRE(dsl_run({"generate", "--config", tmp / "cfg.json", "--n", "7", "--out", tmp / "o"}).code == 0);
        const auto cfg = report_of(tmp / "o")["config"];
        CHECK(cfg["seed"] == 9);
        CHECK(cfg["n"] == 7);
        CHECK(cfg["bins"] == 5);
        CHECK(cfg["l_range"] == json::array({0.5, 2.0}));
        const auto body = slurp(tmp / "o/firms.csv");
        CHECK(std::count(body.begin(), body.end(), '\n') == 8);
    }
    SUBCASE("the echoed config round-trips through --config") {
        REQUIRE(dsl_run({"generate", "--config", tmp / "cfg.json", "--out", tmp / "o1"}).code == 0);
        write_file(tmp / "echo.json", report_of(tmp / "o1")["config"].dump());
        REQUIRE(dsl_run({"generate", "--config", tmp / "echo.json", "--out", tmp / "o1"}).code == 0);
        CHECK(cli::sha256_hex(slurp(tmp / "o1/firms.csv")) == report_of(tmp / "o1")["manifest"][0]["sha256"]);
    }
    SUBCASE("unknown keys and malformed files are config errors") {
        write_file(tmp / "bad.json", R"({"sed": 1})");
        const auto r = dsl_run({"generate", "--config", tmp / "bad.json", "--out", tmp / "x"});
        CHECK(r.code == cli::kExitConfig);
        CHECK(r.err.find("sed") != std::string::npos);
        write_file(tmp / "broken.json", "{\"seed\": ");
        CHECK(dsl_run({"generate", "--config", tmp / "broken.json", "--out", tmp / "x"}).code == cli::kExitConfig);
        CHECK(dsl_run({"generate", "--config", tmp / "missing.json", "--out", tmp / "x"}).code == cli::kExitConfig);
    }
    SUBCASE("invalid values are config errors") {
        CHECK(dsl_run({"estimate", "--input", "x.csv", "--l-range", "2", "1"}).code == cli::kExitConfig);
        CHECK(dsl_run({"generate", "--y0", "-1"}).code == cli::kExitConfig);
        CHECK(dsl_run({"estimate", "--out", tmp / "x"}).code == cli::kExitConfig);
        CHECK(dsl_run({"generate", "--n", "abc"}).code == cli::kExitConfig);
        CHECK(dsl_run({}).code == cli::kExitConfig);
        CHECK(dsl_run({"verify", "--mu-l", "2"}).code == cli::kExitConfig);
    }
    SUBCASE("help and version exit cleanly") {
        const auto h = dsl_run({"--help"});
        CHECK(h.code == 0);
        CHECK(h.out.find("reproduce") != std::string::npos);
        const auto v = dsl_run({"--version"});
        CHECK(v.code == 0);
        CHECK(v.out.find(cli::kVersion) != std::string::npos);
    }
}

TEST_CASE("estimate") {
    TempDir tmp;
    const auto& input = published_csv();
    SUBCASE("recovers the generating exponents and writes the series") {
        const auto r = dsl_run({"estimate", "--input", input, "--out", tmp / "e"});
        REQUIRE(r.code == 0);
        const auto res = report_of(tmp / "e")["results"];
        CHECK(std::abs(res["alpha"]["value"].get<double>() - 1.037) < 0.02);
        CHECK(std::abs(res["beta"]["value"].get<double>() - 0.655) < 0.02);
        CHECK(std::abs(res["p"]["combined"]["value"].get<double>() - 0.698) < 0.05);
        CHECK(res["alpha"]["r2_kernel"].get<double>() > 0.0);
        for (const char* f : {"fig1_scatter.csv", "fig1_kernel.csv", "fig2a_conditional.csv", "fig2b_collapse.csv",
                              "fig3_collapse.csv"}) {
            CHECK(fs::exists(tmp.path / "e" / f));
        }
        CHECK(report_of(tmp / "e")["manifest"].size() == 5);
        CHECK(slurp(tmp / "e/fig1_kernel.csv").rfind("panel,log10_x,log10_estimate,log10_ci_low", 0) == 0);
    }
    SUBCASE("--l-range in log10 units sets the fit range") {
        REQUIRE(dsl_run({"estimate", "--input", input, "--l-range", "0.7", "2.5", "--bootstrap", "0", "--out",
                         tmp / "r"})
                    .code == 0);
        const auto range = report_of(tmp / "r")["results"]["alpha"]["fit_range_log10"];
        CHECK(range[0].get<double>() == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(range[1].get<double>() == doctest::Approx(2.5).epsilon(1e-12));
    }
    SUBCASE("constant labor is a data error recorded in the report") {
        std::string body = "firm_id,Y,L\n";
        std::mt19937_64 rng(3);
        std::lognormal_distribution<double> sales(12.0, 1.0);
        for (int i = 1; i <= 3000; ++i) body += std::to_string(i) + "," + std::to_string(sales(rng)) + ",1\n";
        write_file(tmp / "l1.csv", body);
        const auto r = dsl_run({"estimate", "--input", tmp / "l1.csv", "--out", tmp / "d"});
        CHECK(r.code == cli::kExitData);
        const auto rep = report_of(tmp / "d");
        CHECK(rep["error"]["code"] == "DegenerateX");
        CHECK(rep["exit_code"] == cli::kExitData);
    }
    SUBCASE("unreadable or malformed input is a data error") {
        CHECK(dsl_run({"estimate", "--input", tmp / "none.csv", "--out", tmp / "n"}).code == cli::kExitData);
        write_file(tmp / "hdr.csv", "id,sales,labor\n1,2,3\n");
        const auto r = dsl_run({"estimate", "--input", tmp / "hdr.csv", "--out", tmp / "h"});
        CHECK(r.code == cli::kExitData);
        CHECK(report_of(tmp / "h")["error"]["code"] == "MalformedHeader");
    }
}

TEST_CASE("productivity") {
    TempDir tmp;
    const auto& input = published_csv();
    SUBCASE("published-parameter data") {
        REQUIRE(dsl_run({"productivity", "--input", input, "--out", tmp / "p"}).code == 0);
        const auto rep = report_of(tmp / "p");
        CHECK(std::abs(rep["results"]["beta_t"]["value"].get<double>() - 0.072) < 0.01);
        CHECK(std::abs(rep["results"]["gamma1"]["value"].get<double>() - 0.456) < 0.02);
        CHECK(rep["theory"]["beta_t"].get<double>() == doctest::Approx(0.0727).epsilon(1e-3));
        CHECK(rep["theory_from_estimates"].contains("derived"));

        // ln E[L|C] of a bivariate lognormal is linear in ln C with slope beta_t.
        const auto rows = read_rows(tmp / "p/fig4_theory.csv");
        REQUIRE(rows.size() > 10);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& row : rows) {
            const double x = std::stod(row[0]), y = std::stod(row[1]);
            sx += x, sy += y, sxx += x * x, sxy += x * y;
        }
        const double n = static_cast<double>(rows.size());
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope == doctest::Approx(0.0726).epsilon(0.01));
        for (const char* f : {"fig4_scatter.csv", "fig4_kernel.csv", "fig4_theory.csv", "fig5_collapse.csv"}) {
            CHECK(fs::exists(tmp.path / "p" / f));
        }
    }
    SUBCASE("constant labor reports a flat slope with a warning") {
        std::string body = "firm_id,Y,L\n";
        std::mt19937_64 rng(4);
        std::lognormal_distribution<double> sales(12.0, 1.0);
        for (int i = 1; i <= 3000; ++i) body += std::to_string(i) + "," + std::to_string(sales(rng)) + ",30\n";
        write_file(tmp / "lc.csv", body);
        const auto r = dsl_run({"productivity", "--input", tmp / "lc.csv", "--out", tmp / "c"});
        REQUIRE(r.code == 0);
        const auto res = report_of(tmp / "c")["results"];
        CHECK(std::abs(res["beta_t"]["value"].get<double>()) < 1e-12);
        CHECK(!res["warnings"].empty());
        CHECK(r.out.find("warning") != std::string::npos);
    }
}

TEST_CASE("verify") {
    TempDir tmp;
    SUBCASE("closed-form scaling functions pass") {
        const auto r = dsl_run({"verify", "--out", tmp / "v"});
        CHECK(r.code == 0);
        const auto res = report_of(tmp / "v")["results"];
        CHECK(res["functional_equation"]["max_relative"].get<double>() < 1e-10);
        CHECK(res["functional_equation"]["count"] == 2500);
        CHECK(res["identities"]["all_pass"] == true);
    }
    SUBCASE("grid files") {
        const auto pp = published_params();
        const auto sc = default_scales();
        const auto gy = PhiGrid::from_function(closed_form_phi_Y(pp, sc).f, sc.Y0 * std::exp(-12.0),
                                               sc.Y0 * std::exp(12.0), 20001);
        const auto gl = PhiGrid::from_function(closed_form_phi_L(pp, sc).f, sc.L0 * std::exp(-12.0),
                                               sc.L0 * std::exp(12.0), 20001);
        save(gy, tmp / "phi_y.csv");
        save(gl, tmp / "phi_l.csv");
        const auto ok = dsl_run({"verify", "--phi-y", tmp / "phi_y.csv", "--phi-l", tmp / "phi_l.csv", "--tolerance",
                                 "1e-5", "--out", tmp / "g"});
        CHECK(ok.code == 0);

        auto values = gy.phi();
        for (std::size_t i = 9000; i < 11000; ++i) values[i] *= 1.5;
        save(PhiGrid(gy.x(), values), tmp / "bad_y.csv");
        const auto bad = dsl_run({"verify", "--phi-y", tmp / "bad_y.csv", "--phi-l", tmp / "phi_l.csv",
                                  "--tolerance", "1e-5", "--out", tmp / "b"});
        CHECK(bad.code == cli::kExitVerification);
        CHECK(bad.err.find("functional_equation") != std::string::npos);
        CHECK(report_of(tmp / "b")["results"]["functional_equation"]["pass"] == false);
    }
    SUBCASE("a grid that misses the evaluation domain exhausts it") {
        const auto sc = default_scales();
        save(PhiGrid::from_function(closed_form_phi_Y(published_params(), sc).f, sc.Y0 * 2.0, sc.Y0 * 2.001, 3),
             tmp / "tiny.csv");
        const auto r = dsl_run({"verify", "--phi-y", tmp / "tiny.csv", "--out", tmp / "t"});
        CHECK(r.code == cli::kExitVerification);
        CHECK(report_of(tmp / "t")["error"]["code"] == "DomainExhausted");
    }
    SUBCASE("power-law branch ledger") {
        const auto r = dsl_run({"verify", "--mu-l", "2", "--mu-y", "1", "--out", tmp / "pl"});
        CHECK(r.code == 0);
        const auto ledger = report_of(tmp / "pl")["results"]["identities"];
        CHECK(ledger["all_pass"] == true);
        auto value = [&](const std::string& name) {
            for (const auto& c : ledger["checks"]) {
                if (c["name"] == name) return c["lhs"].get<double>();
            }
            FAIL("missing check " << name);
            return 0.0;
        };
        CHECK(value("alpha") == doctest::Approx(2.0));
        CHECK(value("beta") == doctest::Approx(0.5));
        CHECK(value("a") == doctest::Approx(-5.0));
    }
}

TEST_CASE("reproduce") {
    TempDir tmp;
    SUBCASE("default run passes and is deterministic") {
        const auto r1 = dsl_run({"reproduce", "--out", tmp / "r1"});
        const auto r2 = dsl_run({"reproduce", "--out", tmp / "r2"});
        CHECK(r1.code == 0);
        CHECK(r1.out == r2.out);
        auto a = report_of(tmp / "r1");
        auto b = report_of(tmp / "r2");
        for (const auto& row : a["summary"]) CHECK_MESSAGE(row["status"] == "pass", row.dump());
        CHECK(a["summary"].size() == 9);
        CHECK(a["manifest"] == b["manifest"]);
        CHECK(a["manifest"].size() == 9);
        a.erase("timestamp"), b.erase("timestamp");
        a["config"].erase("out"), b["config"].erase("out");
        CHECK(a == b);
    }
    SUBCASE("tiny samples are marked rather than failed") {
        const auto r = dsl_run({"reproduce", "--n", "100", "--out", tmp / "small"});
        CHECK(r.code == 0);
        const auto rep = report_of(tmp / "small");
        for (const auto& row : rep["summary"]) {
            const auto q = row["quantity"].get<std::string>();
            if (q == "alpha" || q == "beta" || q == "p" || q == "beta_t" || q == "gamma1") {
                CHECK_MESSAGE(row["status"] == "insufficient_precision", q);
            }
        }
        CHECK(rep["monte_carlo"]["insufficient_precision"] == true);
    }
    SUBCASE("non-published parameters are judged against the configured truth") {
        const auto r = dsl_run({"reproduce", "--alpha", "0.8", "--beta", "0.4", "--p", "1.0", "--out", tmp / "t"});
        CHECK(r.code == 0);
        const auto rep = report_of(tmp / "t");
        for (const auto& row : rep["summary"]) {
            if (row["quantity"] == "alpha") CHECK(row["target"] == 0.8);
            if (row["quantity"] == "alpha_t") CHECK(row["status"] == "not_applicable");
        }
    }
}
