// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>

namespace spatialcs::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,
    kUsage = 2,
    kNumeric = 3,
    kIo = 4,
};

/// Environment variable naming the directory for relative output paths.
inline constexpr const char* kOutputDirEnv = "SPATIALCS_OUTPUT_DIR";

/// Parses argv and runs one subcommand. Summaries go to `out`, diagnostics
/// and usage errors to `err`. Returns one of ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Resolves a relative path against $SPATIALCS_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& path);

}  // namespace spatialcs::cli
