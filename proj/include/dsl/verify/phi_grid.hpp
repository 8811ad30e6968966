#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <limits>
#include <vector>

#include "dsl/params.hpp"

namespace dsl {

// A positive scaling function together with the closed interval of arguments
// on which it is defined.
struct ScalingFunction {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool contains(double x) const noexcept { return x > 0.0 && x >= lo && x <= hi; }
    double operator()(double x) const { return f(x); }
};

// Tabulated scaling function, interpolated linearly in (ln x, ln phi).
class PhiGrid {
public:
    // Throws InvalidArgument unless x is strictly increasing and positive,
    // phi is positive, and there are at least two points.
    PhiGrid(std::vector<double> x, std::vector<double> phi);

    // Tabulates f at `points` log-spaced abscissae over [lo, hi].
    static PhiGrid from_function(const std::function<double(double)>& f, double lo, double hi,
                                 std::size_t points);

    // `x,phi` CSV with a header row.
    static PhiGrid read_csv(std::istream& in);
    static PhiGrid read_csv(const std::filesystem::path& path);
    void write_csv(std::ostream& out) const;

    double lo() const noexcept { return x_.front(); }
    double hi() const noexcept { return x_.back(); }
    const std::vector<double>& x() const noexcept { return x_; }
    const std::vector<double>& phi() const noexcept { return phi_; }

    // Throws Domain outside [lo, hi].
    double operator()(double x) const;

    ScalingFunction as_function() const;

private:
    std::vector<double> x_, phi_;
    std::vector<double> log_x_, log_phi_;
};

// The lognormal-branch solutions Phi_Y(Y) = exp(-beta p y^2 + q y) Phi_Y(Y0)
// and Phi_L(L) = exp(-alpha p l^2 + s l) Phi_L(L0), normalized as densities.
ScalingFunction closed_form_phi_Y(const DslParams& params, const ReferenceScales& scales);
ScalingFunction closed_form_phi_L(const DslParams& params, const ReferenceScales& scales);

// The power-law-branch companion of an arbitrary Phi_Y:
// Phi_L(L) = Phi_Y((L/L0)^-alpha Y0) (L/L0)^a Phi_L(L0) / Phi_Y(Y0), with Phi_L(L0) = 1.
ScalingFunction powerlaw_phi_L(const ScalingFunction& phi_Y, double alpha, double a,
                               const ReferenceScales& scales);

}  // namespace dsl
