// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "spatialcs/recovery.hpp"

namespace spatialcs {

/// A named solver with a flat parameter map, e.g. `mbmp:d=3-3-1` or
/// `lasso:radius_scale=1.5` (several parameters separated by ';').
struct MethodSpec {
    std::string name;
    std::map<std::string, std::string> params;

    /// Canonical text form; contains no commas, so it is safe as a CSV cell.
    std::string label() const;
};

/// Known solver names in registry order.
const std::vector<std::string>& method_names();

/// Parses and validates a method specification. Unknown methods or
/// parameters raise ConfigError.
MethodSpec parse_method_spec(const std::string& text);

/// Runs the named solver. `mbmp` without an explicit `d` uses all-ones branching.
RecoveryResult run_method(const MethodSpec& spec, const RecoveryProblem& problem);

/// Parses a dash-separated branch vector such as `3-3-1`.
std::vector<int> parse_branch_vector(const std::string& text);

}  // namespace spatialcs
