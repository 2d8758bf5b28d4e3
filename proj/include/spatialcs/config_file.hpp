// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace spatialcs {

/// `key = value` lines grouped under optional `[section]` headers. Keys
/// before the first header land in the "" section. '#' starts a comment.
struct ConfigFile {
    std::map<std::string, std::map<std::string, std::string>> sections;

    /// Global keys overlaid with the named section's keys.
    std::map<std::string, std::string> merged(const std::string& section) const;
};

/// Throws ConfigError on malformed lines (with the line number).
ConfigFile parse_config(std::istream& is);

/// Throws IoError when the file cannot be read.
ConfigFile load_config(const std::string& path);

}  // namespace spatialcs
