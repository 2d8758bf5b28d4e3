// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "spatialcs/bounds.hpp"
#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"
#include "spatialcs/pattern_stats.hpp"
#include "spatialcs/seeding.hpp"

namespace spatialcs {

namespace {

std::string counts_tag(const char* stream, int M, int N)
{
    return std::string(stream) + "/" + std::to_string(M) + "x" + std::to_string(N);
}

// Runs fn(i) for i in [0, n) on `jobs` threads. Work is pulled from a shared
// counter; callers write into per-index slots so scheduling cannot affect results.
template <class Fn>
void parallel_for(long n, int jobs, Fn&& fn)
{
    const int workers = static_cast<int>(std::max(1L, std::min<long>(jobs, n)));
    if (workers == 1) {
        for (long i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr failure;
    long failure_index = n;
    std::mutex m;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (long i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (i < failure_index) {
                        failure_index = i;
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

bool parse_bool(const std::string& v, const std::string& key)
{
    if (v == "1" || v == "true" || v == "yes" || v == "on")
        return true;
    if (v == "0" || v == "false" || v == "no" || v == "off")
        return false;
    throw ConfigError("setting " + key + " expects a boolean, got '" + v + "'");
}

double parse_real(const std::string& v, const std::string& key)
{
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(d))
        throw ConfigError("setting " + key + " expects a number, got '" + v + "'");
    return d;
}

long parse_integer(const std::string& v, const std::string& key)
{
    const double d = parse_real(v, key);
    if (d != std::floor(d) || std::abs(d) > 9e15)
        throw ConfigError("setting " + key + " expects an integer, got '" + v + "'");
    return static_cast<long>(d);
}

std::uint64_t parse_seed(const std::string& v)
{
    std::uint64_t s = 0;
    const auto* end = v.data() + v.size();
    const auto res = std::from_chars(v.data(), end, s);
    if (v.empty() || res.ec != std::errc() || res.ptr != end)
        throw ConfigError("seed must be a nonnegative 64-bit integer, got '" + v + "'");
    return s;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return out;
}

std::vector<MethodSpec> parse_methods(const std::string& text)
{
    std::vector<MethodSpec> out;
    for (const auto& item : split(text, ','))
        if (!item.empty())
            out.push_back(parse_method_spec(item));
    if (out.empty())
        throw ConfigError("method list is empty");
    return out;
}

std::vector<double> parse_q_grid(const std::string& text)
{
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw ConfigError("q_grid expects start:stop:step");
    const double a = parse_real(parts[0], "q_grid");
    const double b = parse_real(parts[1], "q_grid");
    const double h = parse_real(parts[2], "q_grid");
    if (!(h > 0.0) || !(b >= a))
        throw ConfigError("q_grid needs step > 0 and stop >= start");
    const long n = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
    if (n > 1000000)
        throw ConfigError("q_grid has too many points");
    std::vector<double> q;
    for (long i = 0; i < n; ++i)
        q.push_back(a + static_cast<double>(i) * h);
    return q;
}

std::vector<double> default_q_grid()
{
    std::vector<double> q;
    for (int i = 1; i <= 200; ++i)
        q.push_back(0.005 * i);
    return q;
}

std::vector<ElementCounts> squares(int from, int to)
{
    std::vector<ElementCounts> v;
    for (int n = from; n <= to; ++n)
        v.emplace_back(n, n);
    return v;
}

struct Failure {
    std::size_t method;
    long inner;
    std::string what;
};

struct TrialSlot {
    std::vector<char> error;
    std::vector<double> runtime_ms;
    std::vector<long> solves;
    std::vector<Failure> failures;
};

std::vector<ExperimentRecord> run_recovery(const ExperimentConfig& cfg, std::ostream* diag)
{
    cfg.validate();
    const AngleGrid grid = canonical_grid(cfg.Z);
    const double sigma = sigma_from_snr(cfg.snr_db);
    const auto n_methods = cfg.methods.size();
    const long inner = cfg.protocol == Protocol::uniform ? cfg.inner_trials : 1;
    const long T = cfg.trials;
    const long n_items = static_cast<long>(cfg.mn_list.size()) * T;

    std::vector<TrialSlot> slots(static_cast<std::size_t>(n_items));
    parallel_for(n_items, cfg.jobs, [&](long item) {
        const auto [M, N] = cfg.mn_list[static_cast<std::size_t>(item / T)];
        const long t = item % T;
        TrialSlot& slot = slots[static_cast<std::size_t>(item)];
        slot.error.assign(n_methods, 0);
        slot.runtime_ms.assign(n_methods, 0.0);
        slot.solves.assign(n_methods, 0);

        const ArrayConfig acfg = ArrayConfig::canonical(M, N, cfg.Z);
        const ElementPositions pos = sample_positions(acfg, positions_seed(cfg.base_seed, M, N, t));
        const MeasurementMatrix A = build_matrix(acfg, pos, grid, true);
        for (long i = 0; i < inner; ++i) {
            if (std::all_of(slot.error.begin(), slot.error.end(), [](char e) { return e != 0; }))
                break;
            const Scene scene = synthesize_scene(grid.G(), cfg.K, cfg.P, scene_seed(cfg.base_seed, t, i));
            const SnapshotData data = observe(A, scene, sigma, noise_seed(cfg.base_seed, M, N, t, i));
            const RecoveryProblem problem = RecoveryProblem::from(A, data, cfg.K);
            for (std::size_t m = 0; m < n_methods; ++m) {
                if (slot.error[m])
                    continue;
                const auto start = std::chrono::steady_clock::now();
                int err = 0;
                try {
                    err = support_error(run_method(cfg.methods[m], problem).support, scene.support);
                } catch (const std::exception& e) {
                    err = 1;
                    slot.failures.push_back({m, i, e.what()});
                }
                if (cfg.record_runtime) {
                    const auto stop = std::chrono::steady_clock::now();
                    slot.runtime_ms[m] += std::chrono::duration<double, std::milli>(stop - start).count();
                    ++slot.solves[m];
                }
                if (err)
                    slot.error[m] = 1;
            }
        }
    });

    std::vector<ExperimentRecord> out;
    for (std::size_t c = 0; c < cfg.mn_list.size(); ++c) {
        for (std::size_t m = 0; m < n_methods; ++m) {
            ExperimentRecord rec;
            rec.protocol = cfg.protocol;
            rec.method = cfg.methods[m].label();
            rec.M = cfg.mn_list[c].first;
            rec.N = cfg.mn_list[c].second;
            rec.trials = T;
            double ms = 0.0;
            long solves = 0;
            for (long t = 0; t < T; ++t) {
                const TrialSlot& s = slots[c * static_cast<std::size_t>(T) + static_cast<std::size_t>(t)];
                rec.errors += s.error[m];
                ms += s.runtime_ms[m];
                solves += s.solves[m];
            }
            rec.error_rate = static_cast<double>(rec.errors) / static_cast<double>(T);
            rec.mean_runtime_ms = solves > 0 ? ms / static_cast<double>(solves) : 0.0;
            out.push_back(rec);
        }
    }
    // Identical failures are reported once per (M, N, method) with a count.
    if (diag) {
        for (std::size_t c = 0; c < cfg.mn_list.size(); ++c) {
            std::vector<std::pair<std::string, long>> seen;
            std::vector<std::string> first;
            for (long t = 0; t < T; ++t) {
                const TrialSlot& s = slots[c * static_cast<std::size_t>(T) + static_cast<std::size_t>(t)];
                for (const auto& f : s.failures) {
                    const std::string key = cfg.methods[f.method].label() + ": " + f.what;
                    auto it = std::find_if(seen.begin(), seen.end(), [&](const auto& p) { return p.first == key; });
                    if (it != seen.end()) {
                        ++it->second;
                        continue;
                    }
                    seen.emplace_back(key, 1);
                    first.push_back("trial=" + std::to_string(t) + " inner=" + std::to_string(f.inner));
                }
            }
            for (std::size_t k = 0; k < seen.size(); ++k)
                *diag << "M=" << cfg.mn_list[c].first << " N=" << cfg.mn_list[c].second << " method " << seen[k].first
                      << " (" << seen[k].second << " solve(s), first at " << first[k] << ")\n";
        }
    }
    return out;
}

}  // namespace

std::string to_string(Protocol p)
{
    switch (p) {
    case Protocol::ccdf:
        return "ccdf";
    case Protocol::nonuniform:
        return "nonuniform";
    case Protocol::uniform:
        return "uniform";
    case Protocol::mmv:
        return "mmv";
    }
    return "unknown";
}

Protocol parse_protocol(const std::string& text)
{
    if (text == "ccdf")
        return Protocol::ccdf;
    if (text == "nonuniform")
        return Protocol::nonuniform;
    if (text == "uniform")
        return Protocol::uniform;
    if (text == "mmv")
        return Protocol::mmv;
    throw ConfigError("unknown protocol '" + text + "' (expected ccdf|nonuniform|uniform|mmv)");
}

std::vector<ElementCounts> parse_mn_list(const std::string& text)
{
    std::vector<ElementCounts> out;
    for (const auto& item : split(text, ',')) {
        if (item.empty())
            continue;
        const auto x = item.find('x');
        if (x == std::string::npos)
            throw ConfigError("element counts must look like MxN, got '" + item + "'");
        const long M = parse_integer(item.substr(0, x), "mn");
        const long N = parse_integer(item.substr(x + 1), "mn");
        if (M < 1 || N < 1 || M > 100000 || N > 100000)
            throw ConfigError("element counts must be positive, got '" + item + "'");
        out.emplace_back(static_cast<int>(M), static_cast<int>(N));
    }
    if (out.empty())
        throw ConfigError("element count list is empty");
    return out;
}

std::string format_mn_list(const std::vector<ElementCounts>& list)
{
    std::string s;
    for (std::size_t i = 0; i < list.size(); ++i)
        s += (i ? "," : "") + std::to_string(list[i].first) + "x" + std::to_string(list[i].second);
    return s;
}

void ExperimentConfig::validate() const
{
    if (!(Z >= 1.0) || Z != std::floor(Z))
        throw ConfigError("Z must be a positive integer");
    if (G != static_cast<int>(Z) + 1)
        throw ConfigError("G must equal Z + 1 on the canonical grid");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
    if (jobs < 1)
        throw ConfigError("jobs must be at least 1");
    if (mn_list.empty())
        throw ConfigError("no element counts given");
    for (const auto& [M, N] : mn_list)
        if (M < 1 || N < 1)
            throw ConfigError("element counts must be positive");
    if (protocol == Protocol::ccdf) {
        if (q_grid.empty())
            throw ConfigError("ccdf protocol needs a q grid");
        if (mode == ArrayMode::transceiver)
            for (const auto& [M, N] : mn_list)
                if (M != N)
                    throw ConfigError("transceiver mode needs M == N");
        return;
    }
    if (K < 1)
        throw ConfigError("K must be at least 1");
    if (K >= G)
        throw ConfigError("K must be smaller than G");
    if (P < 1)
        throw ConfigError("P must be at least 1");
    if (protocol == Protocol::mmv && P < 2)
        throw ConfigError("mmv protocol needs P >= 2");
    if (protocol == Protocol::uniform && inner_trials < 1)
        throw ConfigError("uniform protocol needs inner_trials >= 1");
    if (!std::isfinite(snr_db))
        throw ConfigError("snr_db must be finite");
    if (methods.empty())
        throw ConfigError("no recovery methods given");
    if (mode != ArrayMode::independent)
        throw ConfigError("recovery protocols use independent transmit/receive arrays");
}

ExperimentConfig default_config(Protocol protocol)
{
    ExperimentConfig c;
    c.protocol = protocol;
    c.Z = 50;
    c.G = 51;
    c.K = 3;
    c.snr_db = 20.0;
    c.trials = 200;
    c.inner_trials = 500;
    switch (protocol) {
    case Protocol::ccdf:
        c.mn_list = {{5, 5}, {8, 8}, {10, 10}};
        c.q_grid = default_q_grid();
        break;
    case Protocol::nonuniform:
        c.P = 1;
        c.mn_list = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}, {4, 5}, {5, 5}, {6, 6}};
        c.methods = parse_methods("beamform,omp,ols,cosamp,focuss,lasso,mbmp:d=2-2-1");
        break;
    case Protocol::uniform:
        c.P = 1;
        c.trials = 100;
        c.mn_list = {{2, 2}, {2, 3}, {3, 3}, {3, 4}, {4, 4}, {4, 5}, {5, 5}, {6, 6}};
        c.methods = parse_methods("omp,ols,cosamp,focuss,lasso,mbmp:d=3-3-1");
        break;
    case Protocol::mmv:
        c.K = 5;
        c.P = 5;
        c.mn_list = {{3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}};
        c.methods = parse_methods("music,raormp,focuss,mbmp:d=2-2-2-2-1");
        break;
    }
    return c;
}

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {"paper-fig2", "paper-fig3", "paper-fig4", "paper-fig5"};
    return names;
}

ExperimentConfig preset_config(const std::string& name)
{
    std::string n = name;
    if (n.rfind("paper-", 0) != 0)
        n = "paper-" + n;
    ExperimentConfig c;
    if (n == "paper-fig2") {
        c = default_config(Protocol::ccdf);
        c.mn_list = {{10, 10}, {15, 15}, {20, 20}};
        c.trials = 2000;
    } else if (n == "paper-fig3") {
        c = default_config(Protocol::nonuniform);
        c.mn_list = squares(4, 12);
        c.trials = 1000;
        c.methods = parse_methods("beamform,omp,ols,cosamp,focuss,lasso,mbmp:d=2-2-2-2-1");
    } else if (n == "paper-fig4") {
        c = default_config(Protocol::uniform);
        c.mn_list = squares(4, 12);
        c.trials = 100;
        c.methods = parse_methods("omp,ols,cosamp,focuss,lasso,mbmp:d=3-3-3-3-1");
    } else if (n == "paper-fig5") {
        c = default_config(Protocol::mmv);
        c.mn_list = squares(3, 7);
        c.trials = 1000;
        c.methods = parse_methods("music,raormp,focuss,mbmp:d=2-2-2-2-1");
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    c.Z = 250;
    c.G = 251;
    c.K = 5;
    return c;
}

void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& settings)
{
    bool g_given = false;
    for (const auto& [key, value] : settings) {
        if (key == "protocol") {
            cfg.protocol = parse_protocol(value);
        } else if (key == "Z") {
            cfg.Z = parse_real(value, key);
        } else if (key == "G") {
            cfg.G = static_cast<int>(parse_integer(value, key));
            g_given = true;
        } else if (key == "K") {
            cfg.K = static_cast<int>(parse_integer(value, key));
        } else if (key == "P") {
            cfg.P = static_cast<int>(parse_integer(value, key));
        } else if (key == "snr_db") {
            cfg.snr_db = parse_real(value, key);
        } else if (key == "mn") {
            cfg.mn_list = parse_mn_list(value);
        } else if (key == "trials") {
            cfg.trials = parse_integer(value, key);
        } else if (key == "inner_trials") {
            cfg.inner_trials = parse_integer(value, key);
        } else if (key == "methods") {
            cfg.methods = parse_methods(value);
        } else if (key == "seed") {
            cfg.base_seed = parse_seed(value);
        } else if (key == "jobs") {
            cfg.jobs = static_cast<int>(parse_integer(value, key));
        } else if (key == "mode") {
            cfg.mode = parse_array_mode(value);
        } else if (key == "q_grid") {
            cfg.q_grid = parse_q_grid(value);
        } else if (key == "record_runtime") {
            cfg.record_runtime = parse_bool(value, key);
        } else {
            throw ConfigError("unknown setting '" + key + "'");
        }
    }
    if (settings.count("Z") && !g_given && cfg.Z >= 1.0 && cfg.Z == std::floor(cfg.Z) && cfg.Z < 1e9)
        cfg.G = static_cast<int>(cfg.Z) + 1;
}

std::uint64_t positions_seed(std::uint64_t base, int M, int N, long trial)
{
    return derive_trial_seed(base, counts_tag("positions", M, N), static_cast<std::uint64_t>(trial), 0);
}

std::uint64_t scene_seed(std::uint64_t base, long trial, long inner)
{
    return derive_trial_seed(base, "scene", static_cast<std::uint64_t>(trial), static_cast<std::uint64_t>(inner));
}

std::uint64_t noise_seed(std::uint64_t base, int M, int N, long trial, long inner)
{
    return derive_trial_seed(base, counts_tag("noise", M, N), static_cast<std::uint64_t>(trial),
                             static_cast<std::uint64_t>(inner));
}

std::vector<std::vector<double>> coherence_samples(const ExperimentConfig& cfg)
{
    cfg.validate();
    const AngleGrid grid = canonical_grid(cfg.Z);
    const long T = cfg.trials;
    std::vector<std::vector<double>> mu(cfg.mn_list.size(), std::vector<double>(static_cast<std::size_t>(T)));
    const long n_items = static_cast<long>(cfg.mn_list.size()) * T;
    parallel_for(n_items, cfg.jobs, [&](long item) {
        const auto c = static_cast<std::size_t>(item / T);
        const long t = item % T;
        const auto [M, N] = cfg.mn_list[c];
        const ArrayConfig acfg = ArrayConfig::canonical(M, N, cfg.Z, cfg.mode);
        const ElementPositions pos = sample_positions(acfg, positions_seed(cfg.base_seed, M, N, t));
        mu[c][static_cast<std::size_t>(t)] = coherence_from_positions(pos, cfg.Z, grid).mu;
    });
    return mu;
}

std::vector<CcdfRow> run_ccdf(const ExperimentConfig& cfg)
{
    if (cfg.protocol != Protocol::ccdf)
        throw ConfigError("run_ccdf needs protocol=ccdf");
    const auto mu = coherence_samples(cfg);
    std::vector<CcdfRow> rows;
    for (std::size_t c = 0; c < cfg.mn_list.size(); ++c) {
        const auto [M, N] = cfg.mn_list[c];
        const auto emp = empirical_ccdf(mu[c], cfg.q_grid);
        for (std::size_t i = 0; i < cfg.q_grid.size(); ++i) {
            CcdfRow r;
            r.q = cfg.q_grid[i];
            r.empirical = emp[i];
            r.bound = coherence_ccdf_bound(r.q, M, N, cfg.mode, cfg.G, false);
            r.M = M;
            r.N = N;
            r.mode = cfg.mode;
            rows.push_back(r);
        }
    }
    return rows;
}

std::vector<ExperimentRecord> run_nonuniform(const ExperimentConfig& cfg, std::ostream* diag)
{
    if (cfg.protocol != Protocol::nonuniform)
        throw ConfigError("run_nonuniform needs protocol=nonuniform");
    return run_recovery(cfg, diag);
}

std::vector<ExperimentRecord> run_uniform(const ExperimentConfig& cfg, std::ostream* diag)
{
    if (cfg.protocol != Protocol::uniform)
        throw ConfigError("run_uniform needs protocol=uniform");
    return run_recovery(cfg, diag);
}

std::vector<ExperimentRecord> run_mmv(const ExperimentConfig& cfg, std::ostream* diag)
{
    if (cfg.protocol != Protocol::mmv)
        throw ConfigError("run_mmv needs protocol=mmv");
    return run_recovery(cfg, diag);
}

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& cfg, std::ostream* diag)
{
    if (cfg.protocol == Protocol::ccdf)
        throw ConfigError("the ccdf protocol produces a ccdf table, not error rates");
    return run_recovery(cfg, diag);
}

std::string format_number(double v)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_records_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& records)
{
    os << kRecordCsvHeader << '\n';
    for (const auto& r : records) {
        os << to_string(r.protocol) << ',' << r.method << ',' << r.M << ',' << r.N << ','
           << static_cast<long long>(r.M) * r.N << ',' << format_number(cfg.Z) << ',' << cfg.G << ',' << cfg.K << ','
           << cfg.P << ',' << format_number(cfg.snr_db) << ',' << r.trials << ',' << r.errors << ','
           << format_number(r.error_rate) << ',' << (cfg.record_runtime ? format_number(r.mean_runtime_ms) : "")
           << ',' << cfg.base_seed << '\n';
    }
}

void write_ccdf_csv(std::ostream& os, const std::vector<CcdfRow>& rows)
{
    os << kCcdfCsvHeader << '\n';
    for (const auto& r : rows)
        os << format_number(r.q) << ',' << format_number(r.empirical) << ',' << format_number(r.bound) << ','
           << static_cast<long long>(r.M) * r.N << ',' << to_string(r.mode) << '\n';
}

}  // namespace spatialcs
