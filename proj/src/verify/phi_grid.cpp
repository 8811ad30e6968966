#include "dsl/verify/phi_grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "dsl/densities.hpp"
#include "dsl/error.hpp"

namespace dsl {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (s.empty()) return false;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

PhiGrid::PhiGrid(std::vector<double> x, std::vector<double> phi) : x_(std::move(x)), phi_(std::move(phi)) {
    if (x_.size() != phi_.size()) throw Error(ErrorCode::InvalidArgument, "abscissae and values differ in length");
    if (x_.size() < 2) throw Error(ErrorCode::InvalidArgument, "a grid needs at least two points");
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (!(x_[i] > 0.0) || !std::isfinite(x_[i])) {
            throw Error(ErrorCode::InvalidArgument, "grid abscissae must be positive and finite");
        }
        if (!(phi_[i] > 0.0) || !std::isfinite(phi_[i])) {
            throw Error(ErrorCode::InvalidArgument, "grid values must be positive and finite");
        }
        if (i > 0 && !(x_[i] > x_[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "grid abscissae must be strictly increasing");
        }
        log_x_.push_back(std::log(x_[i]));
        log_phi_.push_back(std::log(phi_[i]));
    }
}

PhiGrid PhiGrid::from_function(const std::function<double(double)>& f, double lo, double hi,
                               std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo) || points < 2) {
        throw Error(ErrorCode::InvalidArgument, "need 0 < lo < hi and at least two points");
    }
    std::vector<double> x(points), phi(points);
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < points; ++i) {
        x[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    x.front() = lo;
    x.back() = hi;
    for (std::size_t i = 0; i < points; ++i) phi[i] = f(x[i]);
    return PhiGrid(std::move(x), std::move(phi));
}

PhiGrid PhiGrid::read_csv(std::istream& in) {
    std::string line;
    bool header = false;
    std::vector<double> x, phi;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        const auto t = trim(line);
        if (t.empty()) continue;
        if (!header) {
            if (t != "x,phi") {
                throw Error(ErrorCode::MalformedHeader, "expected header 'x,phi', got '" + std::string(t) + "'");
            }
            header = true;
            continue;
        }
        ++row;
        const auto comma = t.find(',');
        double a = 0.0, b = 0.0;
        if (comma == std::string_view::npos || !parse_double(t.substr(0, comma), a) ||
            !parse_double(t.substr(comma + 1), b)) {
            throw Error(ErrorCode::InvalidArgument, "unparsable grid row " + std::to_string(row));
        }
        x.push_back(a);
        phi.push_back(b);
    }
    if (!header || x.empty()) throw Error(ErrorCode::EmptySource, "grid file has no rows");
    return PhiGrid(std::move(x), std::move(phi));
}

PhiGrid PhiGrid::read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_csv(in);
}

void PhiGrid::write_csv(std::ostream& out) const {
    out << "x,phi\n";
    char buf[64];
    for (std::size_t i = 0; i < x_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x_[i], phi_[i]);
        out << buf;
    }
}

double PhiGrid::operator()(double x) const {
    if (!(x >= x_.front() && x <= x_.back())) {
        throw Error(ErrorCode::Domain, "argument " + std::to_string(x) + " outside the grid");
    }
    const double lx = std::log(x);
    const auto it = std::upper_bound(log_x_.begin(), log_x_.end(), lx);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - log_x_.begin(), 1)),
                                                log_x_.size() - 1);
    const double t = std::clamp((lx - log_x_[k - 1]) / (log_x_[k] - log_x_[k - 1]), 0.0, 1.0);
    return std::exp(log_phi_[k - 1] + t * (log_phi_[k] - log_phi_[k - 1]));
}

ScalingFunction PhiGrid::as_function() const {
    return {[grid = *this](double x) { return grid(x); }, lo(), hi()};
}

ScalingFunction closed_form_phi_Y(const DslParams& params, const ReferenceScales& scales) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "closed-form scaling functions need the lognormal branch");
    }
    return {[params, scales](double Y) { return scaling_function_Y(Y, params, scales); }};
}

ScalingFunction closed_form_phi_L(const DslParams& params, const ReferenceScales& scales) {
    if (validate_params(params) != Branch::lognormal) {
        throw Error(ErrorCode::NonNormalizable, "closed-form scaling functions need the lognormal branch");
    }
    return {[params, scales](double L) { return scaling_function_L(L, params, scales); }};
}

ScalingFunction powerlaw_phi_L(const ScalingFunction& phi_Y, double alpha, double a,
                               const ReferenceScales& scales) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha must be positive");
    if (!phi_Y.contains(scales.Y0)) throw Error(ErrorCode::Domain, "Phi_Y is not defined at Y0");
    const double at_y0 = phi_Y(scales.Y0);
    ScalingFunction out;
    out.f = [phi_Y, alpha, a, scales, at_y0](double L) {
        const double r = L / scales.L0;
        return phi_Y(std::pow(r, -alpha) * scales.Y0) * std::pow(r, a) / at_y0;
    };
    // Z = (L/L0)^-alpha Y0 must stay inside [lo, hi] of Phi_Y.
    out.lo = std::isinf(phi_Y.hi) ? 0.0 : scales.L0 * std::pow(scales.Y0 / phi_Y.hi, 1.0 / alpha);
    out.hi = phi_Y.lo > 0.0 ? scales.L0 * std::pow(scales.Y0 / phi_Y.lo, 1.0 / alpha)
                            : std::numeric_limits<double>::infinity();
    return out;
}

}  // namespace dsl
