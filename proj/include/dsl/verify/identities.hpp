#pragma once

#include <string>
#include <vector>

#include "dsl/params.hpp"
#include "dsl/productivity.hpp"

namespace dsl {

inline constexpr double kIdentityTolerance = 1e-10;

struct IdentityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_error = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|)
    double tolerance = kIdentityTolerance;
    bool pass = false;
};

struct IdentityLedger {
    std::vector<IdentityCheck> checks;

    bool all_pass() const;
    const IdentityCheck* find(const std::string& name) const;
};

// Lognormal-branch identities. The left sides come from the covariance
// obtained by inverting the joint precision matrix numerically; the right
// sides are the closed forms. Throws NonNormalizable off the lognormal branch.
IdentityLedger identity_suite(const DslParams& params);

// Same, checking the supplied productivity parameters instead of the derived ones.
IdentityLedger identity_suite(const DslParams& params, const ProductivityParams& productivity);

// Power-law-branch relations for tail exponents (mu_L, mu_Y), plus the
// functional equation under the one-arbitrary-function construction.
IdentityLedger powerlaw_identity_suite(const PowerLawParams& params, const ReferenceScales& scales = default_scales());

}  // namespace dsl
