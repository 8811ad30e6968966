#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dsl::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitData = 3,
    kExitVerification = 4,
};

// Runs one invocation, e.g. {"estimate", "--input", "firms.csv", "--out", "run1"}.
// Human-readable output goes to `out`, diagnostics to `err`; the return value
// is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsl::cli
