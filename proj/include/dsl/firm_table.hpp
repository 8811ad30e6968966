#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "dsl/params.hpp"

namespace dsl {

struct FirmRecord {
    std::int64_t firm_id = 0;
    double Y = 0.0;  // sales
    double L = 0.0;  // labor
};

// Immutable set of firms with logs precomputed against the attached scales:
// y = ln(Y/Y0), l = ln(L/L0), c = y - l.
class FirmTable {
public:
    // Throws Domain if any record has a nonpositive or non-finite Y or L.
    FirmTable(std::vector<FirmRecord> records, ReferenceScales scales, std::size_t rejected = 0);

    std::size_t size() const noexcept { return records_.size(); }
    bool empty() const noexcept { return records_.empty(); }
    std::size_t rejected() const noexcept { return rejected_; }
    const ReferenceScales& scales() const noexcept { return scales_; }

    std::span<const FirmRecord> records() const noexcept { return records_; }
    std::span<const double> log_y() const noexcept { return y_; }
    std::span<const double> log_l() const noexcept { return l_; }
    std::span<const double> log_c() const noexcept { return c_; }

private:
    std::vector<FirmRecord> records_;
    ReferenceScales scales_;
    std::size_t rejected_ = 0;
    std::vector<double> y_, l_, c_;
};

// Reads the `firm_id,Y,L` schema. Rows with nonpositive or non-numeric values
// are dropped and counted. Throws MalformedHeader, EmptySource (no header or
// no data rows) or AllRowsRejected.
FirmTable ingest_csv(std::istream& in, const ReferenceScales& scales);
FirmTable ingest_csv(const std::filesystem::path& path, const ReferenceScales& scales);

// Writes the same schema with round-trip (17 significant digit) precision.
void write_csv(const FirmTable& table, std::ostream& out);

}  // namespace dsl
