// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/registry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace spatialcs {

namespace {

const std::map<std::string, std::set<std::string>>& allowed_params()
{
    static const std::map<std::string, std::set<std::string>> table = {
        {"beamform", {}},
        {"omp", {}},
        {"ols", {}},
        {"cosamp", {"max_iter", "tol"}},
        {"focuss", {"p", "max_iter", "tol", "lambda"}},
        {"lasso", {"radius_scale", "max_sweeps"}},
        {"music", {}},
        {"raormp", {}},
        {"mbmp", {"d", "max_leaves"}},
        {"l0", {}},
    };
    return table;
}

double param_double(const MethodSpec& s, const std::string& key, double fallback)
{
    const auto it = s.params.find(key);
    if (it == s.params.end())
        return fallback;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(it->second, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != it->second.size() || !std::isfinite(v))
        throw ConfigError("method parameter " + key + " is not a number: '" + it->second + "'");
    return v;
}

int param_int(const MethodSpec& s, const std::string& key, int fallback)
{
    const double v = param_double(s, key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ConfigError("method parameter " + key + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

const std::vector<std::string>& method_names()
{
    static const std::vector<std::string> names = {"beamform", "omp",  "ols",    "cosamp", "focuss",
                                                   "lasso",    "music", "raormp", "mbmp",   "l0"};
    return names;
}

std::string MethodSpec::label() const
{
    std::string out = name;
    bool first = true;
    for (const auto& [k, v] : params) {
        out += first ? ":" : ";";
        out += k + "=" + v;
        first = false;
    }
    return out;
}

std::vector<int> parse_branch_vector(const std::string& text)
{
    std::vector<int> d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '-')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size() || v < 1)
            throw ConfigError("branch vector entries must be positive integers: '" + text + "'");
        d.push_back(v);
    }
    if (d.empty())
        throw ConfigError("empty branch vector");
    return d;
}

MethodSpec parse_method_spec(const std::string& text)
{
    MethodSpec spec;
    const auto colon = text.find(':');
    spec.name = text.substr(0, colon);
    const auto allowed = allowed_params().find(spec.name);
    if (allowed == allowed_params().end())
        throw ConfigError("unknown method '" + spec.name + "'");
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ';')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == kv.size())
                throw ConfigError("method parameter must be key=value: '" + kv + "'");
            const std::string key = kv.substr(0, eq);
            if (!allowed->second.count(key))
                throw ConfigError("method '" + spec.name + "' has no parameter '" + key + "'");
            spec.params[key] = kv.substr(eq + 1);
        }
    }
    if (spec.params.count("d"))
        parse_branch_vector(spec.params["d"]);
    // Numeric parameters are checked eagerly so bad specs fail before a sweep starts.
    for (const auto& [k, v] : spec.params)
        if (k != "d")
            param_double(spec, k, 0.0);
    return spec;
}

RecoveryResult run_method(const MethodSpec& spec, const RecoveryProblem& problem)
{
    const std::string& n = spec.name;
    RecoveryResult r;
    if (n == "beamform") {
        r = beamform(problem);
    } else if (n == "omp") {
        r = omp(problem);
    } else if (n == "ols") {
        r = ols(problem);
    } else if (n == "raormp") {
        r = ra_ormp(problem);
    } else if (n == "music") {
        r = music(problem);
    } else if (n == "l0") {
        r = l0_oracle(problem);
    } else if (n == "cosamp") {
        CosampOptions o;
        o.max_iter = param_int(spec, "max_iter", o.max_iter);
        o.tol = param_double(spec, "tol", o.tol);
        r = cosamp(problem, o);
    } else if (n == "focuss") {
        FocussOptions o;
        o.p_norm = param_double(spec, "p", o.p_norm);
        o.max_iter = param_int(spec, "max_iter", o.max_iter);
        o.tol = param_double(spec, "tol", o.tol);
        o.lambda = param_double(spec, "lambda", o.lambda);
        r = focuss(problem, o);
    } else if (n == "lasso") {
        LassoOptions o;
        o.radius_scale = param_double(spec, "radius_scale", o.radius_scale);
        o.max_sweeps = param_int(spec, "max_sweeps", o.max_sweeps);
        r = lasso_bpdn(problem, o);
    } else if (n == "mbmp") {
        MbmpOptions o;
        const auto d = spec.params.find("d");
        o.branches = d == spec.params.end() ? std::vector<int>(static_cast<std::size_t>(problem.K), 1)
                                            : parse_branch_vector(d->second);
        o.max_leaves = param_double(spec, "max_leaves", o.max_leaves);
        r = mbmp(problem, o);
    } else {
        throw ConfigError("unknown method '" + n + "'");
    }
    r.method_tag = spec.label();
    return r;
}

}  // namespace spatialcs
