#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dsl::cli {

inline constexpr const char* kVersion = "1.0.0";

std::string sha256_hex(std::string_view data);

// Writes through a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, std::string_view content);

// UTC, ISO 8601 to the second.
std::string utc_timestamp();

struct ManifestEntry {
    std::string file;
    std::uintmax_t bytes = 0;
    std::string sha256;
};

// Collects the files a command emits into one output directory.
class OutputSet {
public:
    explicit OutputSet(std::filesystem::path dir);

    const std::filesystem::path& dir() const noexcept { return dir_; }

    void write(const std::string& name, std::string_view content);
    const std::vector<ManifestEntry>& manifest() const noexcept { return manifest_; }
    nlohmann::json manifest_json() const;

private:
    std::filesystem::path dir_;
    std::vector<ManifestEntry> manifest_;
};

}  // namespace dsl::cli
