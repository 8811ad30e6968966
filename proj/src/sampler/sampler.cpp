#include "dsl/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dsl/error.hpp"

namespace dsl {

FirmTable sample_firms(const SynthesisSpec& spec) {
    if (spec.n == 0) throw Error(ErrorCode::InvalidArgument, "population size must be at least 1");
    const auto scales = ReferenceScales::make(spec.scales.Y0, spec.scales.L0);
    const GaussianLogModel g = to_gaussian(spec.params);

    const double f_ll = std::sqrt(g.sig_ll);
    const double f_yl = g.sig_ly / f_ll;
    const double f_yy = std::sqrt(g.sig_yy - f_yl * f_yl);

    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;

    std::vector<FirmRecord> records;
    records.reserve(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        const double z1 = normal(rng);
        const double z2 = normal(rng);
        const double l = g.mu_l + f_ll * z1;
        const double y = g.mu_y + f_yl * z1 + f_yy * z2;
        double L = scales.L0 * std::exp(l);
        if (spec.round_labor) L = std::max(1.0, std::round(L));
        records.push_back({static_cast<std::int64_t>(i + 1), scales.Y0 * std::exp(y), L});
    }
    return FirmTable(std::move(records), scales);
}

SampleMoments sample_moments(const FirmTable& table) {
    const std::size_t n = table.size();
    if (n < 2) throw Error(ErrorCode::EmptyTable, "moments need at least two records");
    const auto l = table.log_l();
    const auto y = table.log_y();

    SampleMoments m;
    m.n = n;
    for (std::size_t i = 0; i < n; ++i) {
        m.mean_l += l[i];
        m.mean_y += y[i];
    }
    m.mean_l /= static_cast<double>(n);
    m.mean_y /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double dl = l[i] - m.mean_l;
        const double dy = y[i] - m.mean_y;
        m.cov_ll += dl * dl;
        m.cov_ly += dl * dy;
        m.cov_yy += dy * dy;
    }
    const double dof = static_cast<double>(n - 1);
    m.cov_ll /= dof;
    m.cov_ly /= dof;
    m.cov_yy /= dof;
    return m;
}

}  // namespace dsl
