// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spatialcs/common.hpp"
#include "spatialcs/registry.hpp"

namespace spatialcs {

enum class Protocol { ccdf, nonuniform, uniform, mmv };

std::string to_string(Protocol p);
Protocol parse_protocol(const std::string& text);

using ElementCounts = std::pair<int, int>;  // (M, N)

/// Parses "3x3,4x5" style lists.
std::vector<ElementCounts> parse_mn_list(const std::string& text);
std::string format_mn_list(const std::vector<ElementCounts>& list);

struct ExperimentConfig {
    Protocol protocol = Protocol::nonuniform;
    double Z = 50;
    int G = 51;
    int K = 3;
    int P = 1;
    double snr_db = 20.0;
    std::vector<ElementCounts> mn_list;
    long trials = 200;
    long inner_trials = 500;
    std::vector<MethodSpec> methods;
    std::uint64_t base_seed = 1;
    int jobs = 1;
    ArrayMode mode = ArrayMode::independent;  // ccdf protocol only
    std::vector<double> q_grid;               // ccdf protocol only
    bool record_runtime = false;

    /// Throws ConfigError when the configuration is unusable.
    void validate() const;
};

/// Desk-scale defaults for a protocol (Z = 50, G = 51, K = 3, 200 trials).
ExperimentConfig default_config(Protocol protocol);

/// Full-scale configurations: paper-fig2 (coherence ccdf), paper-fig3
/// (non-uniform SMV), paper-fig4 (uniform SMV), paper-fig5 (MMV).
ExperimentConfig preset_config(const std::string& name);
const std::vector<std::string>& preset_names();

/// Applies `key = value` settings (Z, G, K, P, snr_db, mn, trials,
/// inner_trials, methods, seed, jobs, mode, q_grid, record_runtime).
/// Unknown keys raise ConfigError. Setting Z without G keeps G = Z + 1.
void apply_settings(ExperimentConfig& cfg, const std::map<std::string, std::string>& settings);

struct ExperimentRecord {
    Protocol protocol = Protocol::nonuniform;
    std::string method;
    int M = 0;
    int N = 0;
    long trials = 0;
    long errors = 0;
    double error_rate = 0.0;
    double mean_runtime_ms = 0.0;
};

struct CcdfRow {
    double q = 0.0;
    double empirical = 0.0;
    double bound = 0.0;
    int M = 0;
    int N = 0;
    ArrayMode mode = ArrayMode::independent;
};

/// Seed stream tags shared by every protocol so that trial t of the
/// non-uniform protocol is inner draw 0 of outer draw t in the uniform one.
std::uint64_t positions_seed(std::uint64_t base, int M, int N, long trial);
std::uint64_t scene_seed(std::uint64_t base, long trial, long inner);
std::uint64_t noise_seed(std::uint64_t base, int M, int N, long trial, long inner);

std::vector<CcdfRow> run_ccdf(const ExperimentConfig& cfg);

/// Recovery protocols. Solver exceptions count as trial errors and are
/// reported on `diag` (if given) in deterministic order after the run.
std::vector<ExperimentRecord> run_nonuniform(const ExperimentConfig& cfg, std::ostream* diag = nullptr);
std::vector<ExperimentRecord> run_uniform(const ExperimentConfig& cfg, std::ostream* diag = nullptr);
std::vector<ExperimentRecord> run_mmv(const ExperimentConfig& cfg, std::ostream* diag = nullptr);

/// Dispatches on cfg.protocol; ccdf is rejected (use run_ccdf).
std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& cfg, std::ostream* diag = nullptr);

/// Raw coherence samples per (M, N) entry, in trial order.
std::vector<std::vector<double>> coherence_samples(const ExperimentConfig& cfg);

inline constexpr const char* kRecordCsvHeader =
    "protocol,method,M,N,MN,Z,G,K,P,snr_db,trials,errors,error_rate,mean_runtime_ms,base_seed";
inline constexpr const char* kCcdfCsvHeader = "q,ccdf_empirical,ccdf_bound,MN,mode";

/// mean_runtime_ms is left empty unless cfg.record_runtime is set, so that
/// reruns produce byte-identical files.
void write_records_csv(std::ostream& os, const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& records);
void write_ccdf_csv(std::ostream& os, const std::vector<CcdfRow>& rows);

/// Shortest round-trip decimal representation used in every CSV cell.
std::string format_number(double v);

}  // namespace spatialcs
