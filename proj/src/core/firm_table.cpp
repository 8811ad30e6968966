#include "dsl/firm_table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "dsl/error.hpp"

namespace dsl {

FirmTable::FirmTable(std::vector<FirmRecord> records, ReferenceScales scales, std::size_t rejected)
    : records_(std::move(records)), scales_(ReferenceScales::make(scales.Y0, scales.L0)),
      rejected_(rejected) {
    y_.reserve(records_.size());
    l_.reserve(records_.size());
    c_.reserve(records_.size());
    for (const auto& r : records_) {
        if (!(r.Y > 0.0) || !(r.L > 0.0) || !std::isfinite(r.Y) || !std::isfinite(r.L)) {
            throw Error(ErrorCode::Domain,
                        "firm " + std::to_string(r.firm_id) + " has nonpositive Y or L");
        }
        const double y = std::log(r.Y / scales_.Y0);
        const double l = std::log(r.L / scales_.L0);
        y_.push_back(y);
        l_.push_back(l);
        c_.push_back(y - l);
    }
}

namespace {

std::string_view trim(std::string_view s) {
    const auto ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_field(std::string_view s, T& out) {
    s = trim(s);
    if (s.empty()) return false;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc{} && ptr == end;
}

bool parse_row(std::string_view line, FirmRecord& rec) {
    const auto c1 = line.find(',');
    if (c1 == std::string_view::npos) return false;
    const auto c2 = line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) return false;
    if (line.find(',', c2 + 1) != std::string_view::npos) return false;
    return parse_field(line.substr(0, c1), rec.firm_id) &&
           parse_field(line.substr(c1 + 1, c2 - c1 - 1), rec.Y) &&
           parse_field(line.substr(c2 + 1), rec.L) && std::isfinite(rec.Y) &&
           std::isfinite(rec.L) && rec.Y > 0.0 && rec.L > 0.0;
}

}  // namespace

FirmTable ingest_csv(std::istream& in, const ReferenceScales& scales) {
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        have_header = true;
        break;
    }
    if (!have_header) throw Error(ErrorCode::EmptySource, "input has no header row");
    if (trim(line) != "firm_id,Y,L") {
        throw Error(ErrorCode::MalformedHeader,
                    "expected header 'firm_id,Y,L', got '" + std::string(trim(line)) + "'");
    }

    std::vector<FirmRecord> records;
    std::size_t rejected = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        FirmRecord rec;
        if (parse_row(trim(line), rec)) {
            records.push_back(rec);
        } else {
            ++rejected;
        }
    }
    if (records.empty() && rejected == 0) throw Error(ErrorCode::EmptySource, "input has no data rows");
    if (records.empty()) {
        throw Error(ErrorCode::AllRowsRejected, "all " + std::to_string(rejected) + " rows rejected");
    }
    return FirmTable(std::move(records), scales, rejected);
}

FirmTable ingest_csv(const std::filesystem::path& path, const ReferenceScales& scales) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return ingest_csv(in, scales);
}

void write_csv(const FirmTable& table, std::ostream& out) {
    out << "firm_id,Y,L\n";
    char buf[96];
    for (const auto& r : table.records()) {
        const int len = std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n",
                                      static_cast<long long>(r.firm_id), r.Y, r.L);
        out.write(buf, len);
    }
}

}  // namespace dsl
