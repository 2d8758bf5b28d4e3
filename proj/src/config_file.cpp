// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/config_file.hpp"

#include <fstream>
#include <istream>

#include "spatialcs/common.hpp"

namespace spatialcs {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> ConfigFile::merged(const std::string& section) const
{
    std::map<std::string, std::string> out;
    if (auto g = sections.find(""); g != sections.end())
        out = g->second;
    if (auto s = sections.find(section); s != sections.end() && !section.empty())
        for (const auto& [k, v] : s->second)
            out[k] = v;
    return out;
}

ConfigFile parse_config(std::istream& is)
{
    ConfigFile cfg;
    std::string current;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ConfigError("config line " + std::to_string(lineno) + ": malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            cfg.sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.sections[current][key] = value;
    }
    return cfg;
}

ConfigFile load_config(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open config file '" + path + "'");
    return parse_config(is);
}

}  // namespace spatialcs
