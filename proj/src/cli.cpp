// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "spatialcs/bounds.hpp"
#include "spatialcs/config_file.hpp"
#include "spatialcs/experiments.hpp"
#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"
#include "spatialcs/pattern_stats.hpp"
#include "spatialcs/recovery.hpp"
#include "spatialcs/registry.hpp"
#include "spatialcs/seeding.hpp"
#include "spatialcs/serialization.hpp"

#ifndef SPATIALCS_VERSION
#define SPATIALCS_VERSION "0.0.0"
#endif

namespace spatialcs::cli {

namespace {

struct ArrayFlags {
    int M = 4;
    int N = 4;
    double Z = 50;
    double Z_tx = -1;
    double Z_rx = -1;
    std::string mode = "independent";
    std::string dist_tx = "uniform";
    std::string dist_rx = "uniform";
};

void add_array_flags(CLI::App* app, ArrayFlags& f)
{
    app->add_option("--M", f.M, "number of transmitters")->capture_default_str();
    app->add_option("--N", f.N, "number of receivers")->capture_default_str();
    app->add_option("--Z", f.Z, "total aperture in half-wavelengths")->capture_default_str();
    app->add_option("--Z-tx", f.Z_tx, "transmit aperture (default Z/2)");
    app->add_option("--Z-rx", f.Z_rx, "receive aperture (default Z/2)");
    app->add_option("--mode", f.mode, "independent|transceiver")->capture_default_str();
    app->add_option("--dist-tx", f.dist_tx, "uniform | uniform:a,b | point:v | discrete:v1/v2[@w1/w2]")
        ->capture_default_str();
    app->add_option("--dist-rx", f.dist_rx, "receive position distribution")->capture_default_str();
}

ArrayConfig make_array(const ArrayFlags& f)
{
    ArrayConfig cfg;
    cfg.M = f.M;
    cfg.N = f.N;
    cfg.Z = f.Z;
    if (!(f.Z > 0.0))
        throw ConfigError("--Z must be positive");
    cfg.Z_tx = f.Z_tx >= 0.0 ? f.Z_tx : (f.Z_rx >= 0.0 ? f.Z - f.Z_rx : 0.5 * f.Z);
    cfg.Z_rx = f.Z_rx >= 0.0 ? f.Z_rx : f.Z - cfg.Z_tx;
    cfg.mode = parse_array_mode(f.mode);
    cfg.tx_dist = PositionDistribution::parse(f.dist_tx, cfg.Z_tx / cfg.Z);
    cfg.rx_dist = PositionDistribution::parse(f.dist_rx, cfg.Z_rx / cfg.Z);
    if (cfg.mode == ArrayMode::transceiver)
        cfg.tx_dist = cfg.rx_dist;
    cfg.validate();
    return cfg;
}

std::string fmt(double v, int digits = 10)
{
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

std::string join_support(const std::vector<int>& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? ";" : "") + std::to_string(s[i]);
    return out;
}

// Output sink: "-" is the summary stream, anything else a file.
class Sink {
public:
    Sink(const std::string& path, std::ostream& out)
    {
        if (path == "-") {
            os_ = &out;
            return;
        }
        resolved_ = resolve_output_path(path);
        file_ = std::make_unique<std::ofstream>(resolved_);
        if (!*file_)
            throw IoError("cannot open '" + resolved_ + "' for writing");
        os_ = file_.get();
    }
    std::ostream& stream() { return *os_; }
    void close()
    {
        if (file_) {
            file_->close();
            if (!*file_)
                throw IoError("write to '" + resolved_ + "' failed");
        }
    }
    const std::string& path() const { return resolved_; }
    bool is_file() const { return file_ != nullptr; }

private:
    std::ostream* os_ = nullptr;
    std::unique_ptr<std::ofstream> file_;
    std::string resolved_;
};

struct SweepFlags {
    std::string protocol;
    std::string config_path;
    std::string preset;
    std::string out;
    std::map<std::string, std::string> values;  // setting key -> flag text
    std::map<std::string, CLI::Option*> options;
    bool record_runtime = false;
};

void add_sweep_flags(CLI::App* app, SweepFlags& f, bool with_protocol)
{
    if (with_protocol)
        app->add_option("--protocol", f.protocol, "nonuniform|uniform|mmv");
    app->add_option("--config", f.config_path, "settings file (key = value, [protocol] sections)");
    app->add_option("--preset", f.preset, "paper-fig2|paper-fig3|paper-fig4|paper-fig5");
    app->add_option("--out", f.out, "CSV output path ('-' for standard output)");
    const std::vector<std::pair<std::string, std::string>> keys = {
        {"Z", "--Z"},         {"G", "--G"},         {"K", "--K"},
        {"P", "--P"},         {"snr_db", "--snr"},  {"mn", "--mn"},
        {"trials", "--trials"}, {"inner_trials", "--inner-trials"}, {"methods", "--methods"},
        {"seed", "--seed"},   {"jobs", "--jobs"},   {"mode", "--mode"},
        {"q_grid", "--q-grid"},
    };
    for (const auto& [key, flag] : keys) {
        f.values[key];
        f.options[key] = app->add_option(flag, f.values[key], "setting '" + key + "'");
    }
    app->add_flag("--record-runtime", f.record_runtime, "fill mean_runtime_ms (output no longer byte-stable)");
}

ExperimentConfig build_experiment(const SweepFlags& f, std::optional<Protocol> forced)
{
    std::optional<ConfigFile> file;
    if (!f.config_path.empty())
        file = load_config(f.config_path);

    Protocol proto = Protocol::nonuniform;
    std::optional<ExperimentConfig> preset;
    if (!f.preset.empty())
        preset = preset_config(f.preset);
    if (forced)
        proto = *forced;
    else if (!f.protocol.empty())
        proto = parse_protocol(f.protocol);
    else if (file && file->merged("").count("protocol"))
        proto = parse_protocol(file->merged("").at("protocol"));
    else if (preset)
        proto = preset->protocol;

    ExperimentConfig cfg = preset ? *preset : default_config(proto);
    cfg.protocol = proto;
    if (file) {
        auto settings = file->merged(to_string(proto));
        settings.erase("protocol");
        apply_settings(cfg, settings);
    }
    std::map<std::string, std::string> flags;
    for (const auto& [key, opt] : f.options)
        if (opt->count() > 0)
            flags[key] = f.values.at(key);
    apply_settings(cfg, flags);
    if (f.record_runtime)
        cfg.record_runtime = true;
    cfg.validate();
    return cfg;
}

std::vector<double> parse_reals(const std::string& text, const std::string& what)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw ConfigError(what + ": cannot parse '" + item + "'");
        out.push_back(v);
    }
    if (out.empty())
        throw ConfigError(what + " is empty");
    return out;
}

// Values like "pi", "2pi", "1.5pi" or plain numbers.
double parse_angle(const std::string& text)
{
    if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
        const std::string head = text.substr(0, text.size() - 2);
        const double k = head.empty() ? 1.0 : parse_reals(head, "--u").front();
        return k * pi;
    }
    return parse_reals(text, "--u").front();
}

}  // namespace

std::string resolve_output_path(const std::string& path)
{
    const std::filesystem::path p(path);
    const char* dir = std::getenv(kOutputDirEnv);
    if (p.is_absolute() || dir == nullptr || *dir == '\0')
        return path;
    return (std::filesystem::path(dir) / p).string();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Spatial compressive sensing toolkit for MIMO radar direction finding"};
    app.name("spatialcs");
    app.set_version_flag("--version", std::string("spatialcs ") + SPATIALCS_VERSION);
    app.require_subcommand(1);
    app.fallthrough(false);

    std::function<int()> action;

    // grid
    auto* grid_cmd = app.add_subcommand("grid", "print the canonical angle grid (G = Z + 1, spacing 2/Z)");
    double grid_Z = 50;
    std::string grid_out = "-";
    std::uint64_t grid_seed = 0;
    grid_cmd->add_option("--Z", grid_Z, "integer aperture")->capture_default_str();
    grid_cmd->add_option("--out", grid_out, "CSV path ('-' for standard output)")->capture_default_str();
    grid_cmd->add_option("--seed", grid_seed, "accepted for uniformity; the grid is deterministic");
    grid_cmd->callback([&] {
        action = [&] {
            const AngleGrid g = canonical_grid(grid_Z);
            Sink sink(grid_out, out);
            sink.stream() << "index,phi\n";
            for (int i = 0; i < g.G(); ++i)
                sink.stream() << i << ',' << format_number(g.phi[static_cast<std::size_t>(i)]) << '\n';
            sink.close();
            if (sink.is_file())
                out << "G=" << g.G() << " spacing=" << format_number(g.spacing) << " written=" << sink.path() << '\n';
            return kSuccess;
        };
    });

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "draw random element positions");
    ArrayFlags sample_arr;
    std::uint64_t sample_seed = 1;
    std::string sample_out = "-";
    add_array_flags(sample_cmd, sample_arr);
    sample_cmd->add_option("--seed", sample_seed, "random seed")->capture_default_str();
    sample_cmd->add_option("--out", sample_out, "positions file ('-' for standard output)")->capture_default_str();
    sample_cmd->callback([&] {
        action = [&] {
            const auto cfg = make_array(sample_arr);
            const auto pos = sample_positions(cfg, sample_seed);
            Sink sink(sample_out, out);
            write_positions(sink.stream(), pos);
            sink.close();
            return kSuccess;
        };
    });

    // matrix
    auto* matrix_cmd = app.add_subcommand("matrix", "build the virtual-array dictionary on the canonical grid");
    ArrayFlags matrix_arr;
    std::uint64_t matrix_seed = 1;
    std::string matrix_out = "-";
    std::string matrix_pos_out;
    bool matrix_raw = false;
    add_array_flags(matrix_cmd, matrix_arr);
    matrix_cmd->add_option("--seed", matrix_seed, "random seed")->capture_default_str();
    matrix_cmd->add_option("--out", matrix_out, "matrix file ('-' for standard output)")->capture_default_str();
    matrix_cmd->add_option("--positions-out", matrix_pos_out, "also write the sampled positions");
    matrix_cmd->add_flag("--raw", matrix_raw, "keep column norms sqrt(MN) instead of unit norm");
    matrix_cmd->callback([&] {
        action = [&] {
            const auto cfg = make_array(matrix_arr);
            const auto pos = sample_positions(cfg, matrix_seed);
            const auto A = build_matrix(cfg, pos, canonical_grid(cfg.Z), !matrix_raw);
            Sink sink(matrix_out, out);
            write_complex_matrix(sink.stream(), A.entries);
            sink.close();
            if (!matrix_pos_out.empty()) {
                Sink ps(matrix_pos_out, out);
                write_positions(ps.stream(), pos);
                ps.close();
            }
            return kSuccess;
        };
    });

    // pattern-stats
    auto* stats_cmd = app.add_subcommand("pattern-stats", "closed-form vs Monte Carlo pattern mean and variances");
    ArrayFlags stats_arr;
    stats_arr.M = 10;
    stats_arr.N = 10;
    std::uint64_t stats_seed = 1;
    std::string stats_u = "0,pi,2pi,3pi";
    long stats_draws = 10000;
    add_array_flags(stats_cmd, stats_arr);
    stats_cmd->add_option("--seed", stats_seed, "random seed")->capture_default_str();
    stats_cmd->add_option("--u", stats_u, "comma-separated lags; 'pi' suffix allowed")->capture_default_str();
    stats_cmd->add_option("--draws", stats_draws, "Monte Carlo position draws")->capture_default_str();
    stats_cmd->callback([&] {
        action = [&] {
            const auto cfg = make_array(stats_arr);
            std::vector<double> u;
            std::stringstream ss(stats_u);
            std::string item;
            while (std::getline(ss, item, ','))
                u.push_back(parse_angle(item));
            const auto mc = monte_carlo_stats(cfg, u, stats_draws, stats_seed);
            out << "u,analytic_mean,analytic_var_re,analytic_var_im,mc_mean_re,mc_mean_im,mc_var_re,mc_var_im,mc_cov\n";
            for (std::size_t i = 0; i < u.size(); ++i) {
                std::string analytic = ",,";
                try {
                    const auto a = analytic_stats(cfg.tx_dist, cfg.rx_dist, cfg.M, cfg.N, u[i]);
                    analytic = fmt(a.mean.real()) + "," + fmt(a.var_re) + "," + fmt(a.var_im);
                } catch (const ConfigError& e) {
                    if (i == 0)
                        err << "closed form unavailable: " << e.what() << '\n';
                }
                out << fmt(u[i]) << ',' << analytic << ',' << fmt(mc[i].mean.real()) << ',' << fmt(mc[i].mean.imag())
                    << ',' << fmt(mc[i].var_re) << ',' << fmt(mc[i].var_im) << ',' << fmt(mc[i].cov) << '\n';
            }
            return kSuccess;
        };
    });

    // coherence-ccdf
    auto* ccdf_cmd = app.add_subcommand("coherence-ccdf", "empirical coherence ccdf against its upper bound");
    SweepFlags ccdf_flags;
    ccdf_flags.out = "coherence-ccdf.csv";
    add_sweep_flags(ccdf_cmd, ccdf_flags, false);
    ccdf_cmd->callback([&] {
        action = [&] {
            const auto cfg = build_experiment(ccdf_flags, Protocol::ccdf);
            const auto rows = run_ccdf(cfg);
            Sink sink(ccdf_flags.out, out);
            write_ccdf_csv(sink.stream(), rows);
            sink.close();
            if (sink.is_file()) {
                double worst = -1.0;
                for (const auto& r : rows)
                    if (r.bound <= 0.9)
                        worst = std::max(worst, r.empirical - r.bound);
                out << "rows=" << rows.size() << " max_excess_where_bound_le_0.9=" << fmt(worst, 6)
                    << " written=" << sink.path() << '\n';
            }
            return kSuccess;
        };
    });

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "recovery guarantees and coherence ccdf bounds");
    int b_K = 5;
    int b_G = 251;
    double b_eps = 0.1;
    double b_C = 1.0;
    double b_c = 1.0;
    double b_q = -1.0;
    int b_M = 15;
    int b_N = 15;
    std::string b_mode = "independent";
    std::uint64_t b_seed = 0;
    bounds_cmd->add_option("--K", b_K, "sparsity")->capture_default_str();
    bounds_cmd->add_option("--G", b_G, "grid size")->capture_default_str();
    bounds_cmd->add_option("--eps", b_eps, "failure probability")->capture_default_str();
    bounds_cmd->add_option("--C-const", b_C, "scale constant of the non-uniform bound")->capture_default_str();
    bounds_cmd->add_option("--c-const", b_c, "log constant of the non-uniform bound")->capture_default_str();
    bounds_cmd->add_option("--q", b_q, "also evaluate the coherence ccdf bound at q");
    bounds_cmd->add_option("--M", b_M, "transmitters (ccdf bound)")->capture_default_str();
    bounds_cmd->add_option("--N", b_N, "receivers (ccdf bound)")->capture_default_str();
    bounds_cmd->add_option("--mode", b_mode, "independent|transceiver")->capture_default_str();
    bounds_cmd->add_option("--seed", b_seed, "accepted for uniformity; bounds are deterministic");
    bounds_cmd->callback([&] {
        action = [&] {
            const double gamma = std::sqrt(pi) * b_G / (2.0 * b_eps);
            out << "constant_C=" << fmt(uniform_recovery_constant(), 17) << '\n';
            out << "gamma=" << fmt(gamma) << '\n';
            out << "mn_bound_uniform=" << fmt(uniform_recovery_mn(b_K, b_G, b_eps)) << '\n';
            out << "mn_bound_nonuniform=" << fmt(nonuniform_recovery_mn(b_K, b_G, b_eps, b_C, b_c)) << '\n';
            if (b_q >= 0.0) {
                const auto mode = parse_array_mode(b_mode);
                out << "ccdf_bound_pair=" << fmt(coherence_ccdf_bound(b_q, b_M, b_N, mode, b_G, true)) << '\n';
                out << "ccdf_bound_coherence=" << fmt(coherence_ccdf_bound(b_q, b_M, b_N, mode, b_G, false)) << '\n';
            }
            return kSuccess;
        };
    });

    // isotropy-check
    auto* iso_cmd = app.add_subcommand("isotropy-check", "characteristic-function conditions on a grid");
    ArrayFlags iso_arr;
    double iso_step = -1.0;
    std::uint64_t iso_seed = 0;
    add_array_flags(iso_cmd, iso_arr);
    iso_cmd->add_option("--grid-step", iso_step, "grid spacing (default 2/Z, the canonical grid)");
    iso_cmd->add_option("--seed", iso_seed, "accepted for uniformity; the check is deterministic");
    iso_cmd->callback([&] {
        action = [&] {
            if (iso_arr.mode == "transceiver")
                iso_arr.M = iso_arr.N;
            const auto cfg = make_array(iso_arr);
            AngleGrid grid;
            if (iso_step <= 0.0) {
                grid = canonical_grid(cfg.Z);
            } else {
                std::vector<double> phi;
                for (long i = 0;; ++i) {
                    const double p = -1.0 + static_cast<double>(i) * iso_step;
                    if (p > 1.0 + 1e-12 || i > 10000000)
                        break;
                    phi.push_back(std::min(p, 1.0));
                }
                grid = make_grid(std::move(phi), cfg.Z);
            }
            const auto iso = isotropy_check(cfg.tx_dist, cfg.rx_dist, grid, cfg.Z, cfg.mode, cfg.N);
            out << format_verdict("isotropy", iso) << '\n';
            const auto& tx = cfg.mode == ArrayMode::transceiver ? cfg.rx_dist : cfg.tx_dist;
            out << format_verdict("uniform_condition", uniform_condition_check(tx, cfg.rx_dist, grid, cfg.Z)) << '\n';
            return kSuccess;
        };
    });

    // recover
    auto* rec_cmd = app.add_subcommand("recover", "run one recovery method on stored or generated data");
    ArrayFlags rec_arr;
    std::string rec_A, rec_Y, rec_out, rec_A_out, rec_Y_out;
    std::string rec_method = "omp";
    int rec_K = 3;
    int rec_P = 1;
    double rec_snr = 20.0;
    double rec_sigma = -1.0;
    std::uint64_t rec_seed = 1;
    add_array_flags(rec_cmd, rec_arr);
    rec_cmd->add_option("--A", rec_A, "dictionary file (complex_matrix format)");
    rec_cmd->add_option("--Y", rec_Y, "observation file (complex_matrix format)");
    rec_cmd->add_option("--method", rec_method, "method[:key=value;...]")->capture_default_str();
    rec_cmd->add_option("--K", rec_K, "number of targets")->capture_default_str();
    rec_cmd->add_option("--P", rec_P, "pulses (generated data)")->capture_default_str();
    rec_cmd->add_option("--snr", rec_snr, "SNR in dB (generated data)")->capture_default_str();
    rec_cmd->add_option("--sigma", rec_sigma, "noise level for stored data (default from --snr)");
    rec_cmd->add_option("--seed", rec_seed, "random seed (generated data)")->capture_default_str();
    rec_cmd->add_option("--out", rec_out, "write the G x P estimate");
    rec_cmd->add_option("--A-out", rec_A_out, "write the generated dictionary");
    rec_cmd->add_option("--Y-out", rec_Y_out, "write the generated observations");
    rec_cmd->callback([&] {
        action = [&] {
            const MethodSpec spec = parse_method_spec(rec_method);
            RecoveryProblem problem;
            std::vector<int> truth;
            if (!rec_A.empty() || !rec_Y.empty()) {
                if (rec_A.empty() || rec_Y.empty())
                    throw ConfigError("--A and --Y must be given together");
                problem.A = load_complex_matrix(rec_A);
                problem.Y = load_complex_matrix(rec_Y);
                problem.K = rec_K;
                problem.sigma = rec_sigma >= 0.0 ? rec_sigma : sigma_from_snr(rec_snr);
                const RVector norms = problem.A.colwise().norm().transpose();
                problem.normalized = ((norms.array() - 1.0).abs() <= 1e-9).all();
            } else {
                const auto cfg = make_array(rec_arr);
                const auto grid = canonical_grid(cfg.Z);
                const auto pos = sample_positions(cfg, positions_seed(rec_seed, cfg.M, cfg.N, 0));
                const auto A = build_matrix(cfg, pos, grid, true);
                const auto scene = synthesize_scene(grid.G(), rec_K, rec_P, scene_seed(rec_seed, 0, 0));
                const double sigma = rec_sigma >= 0.0 ? rec_sigma : sigma_from_snr(rec_snr);
                const auto data = observe(A, scene, sigma, noise_seed(rec_seed, cfg.M, cfg.N, 0, 0));
                problem = RecoveryProblem::from(A, data, rec_K);
                truth = scene.support;
                if (!rec_A_out.empty())
                    save_complex_matrix(resolve_output_path(rec_A_out), A.entries);
                if (!rec_Y_out.empty())
                    save_complex_matrix(resolve_output_path(rec_Y_out), data.Y);
            }
            const auto r = run_method(spec, problem);
            out << "method=" << r.method_tag << '\n';
            out << "support=" << join_support(r.support) << '\n';
            if (!truth.empty()) {
                out << "true_support=" << join_support(truth) << '\n';
                out << "support_error=" << support_error(r.support, truth) << '\n';
            }
            out << "residual_norm=" << fmt(r.residual_norm) << '\n';
            out << "iterations=" << r.iterations << '\n';
            out << "converged=" << (r.converged ? "true" : "false") << '\n';
            for (const auto& w : r.warnings)
                err << "warning: " << w << '\n';
            if (!rec_out.empty())
                save_complex_matrix(resolve_output_path(rec_out), r.xhat);
            return kSuccess;
        };
    });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo support-recovery sweep over element counts");
    SweepFlags sweep_flags;
    add_sweep_flags(sweep_cmd, sweep_flags, true);
    sweep_cmd->callback([&] {
        action = [&] {
            const auto cfg = build_experiment(sweep_flags, std::nullopt);
            if (cfg.protocol == Protocol::ccdf)
                throw ConfigError("--protocol ccdf belongs to the coherence-ccdf subcommand");
            const auto records = run_sweep(cfg, &err);
            Sink sink(sweep_flags.out.empty() ? "sweep-" + to_string(cfg.protocol) + ".csv" : sweep_flags.out, out);
            write_records_csv(sink.stream(), cfg, records);
            sink.close();
            if (sink.is_file()) {
                for (const auto& r : records)
                    out << r.method << " M=" << r.M << " N=" << r.N << " error_rate=" << format_number(r.error_rate)
                        << '\n';
                out << "written=" << sink.path() << '\n';
            }
            return kSuccess;
        };
    });

    // roundtrip-check
    auto* rt_cmd = app.add_subcommand("roundtrip-check", "matched-filter waveform model against Y = A X");
    std::string rt_M = "1,2,4,8";
    int rt_N = 4;
    double rt_Z = 50;
    int rt_K = 2;
    int rt_P = 1;
    bool rt_raw = false;
    std::uint64_t rt_seed = 1;
    rt_cmd->add_option("--M", rt_M, "comma-separated transmitter counts")->capture_default_str();
    rt_cmd->add_option("--N", rt_N, "receivers")->capture_default_str();
    rt_cmd->add_option("--Z", rt_Z, "integer aperture")->capture_default_str();
    rt_cmd->add_option("--K", rt_K, "targets")->capture_default_str();
    rt_cmd->add_option("--P", rt_P, "pulses")->capture_default_str();
    rt_cmd->add_option("--seed", rt_seed, "random seed")->capture_default_str();
    rt_cmd->add_flag("--raw-codes", rt_raw, "use unscaled DFT rows (W = M I)");
    rt_cmd->callback([&] {
        action = [&] {
            bool all = true;
            for (double m : parse_reals(rt_M, "--M")) {
                if (m < 1 || m != std::floor(m))
                    throw ConfigError("--M entries must be positive integers");
                const int M = static_cast<int>(m);
                const auto cfg = ArrayConfig::canonical(M, rt_N, rt_Z);
                const auto grid = canonical_grid(rt_Z);
                const auto pos = sample_positions(cfg, positions_seed(rt_seed, M, rt_N, 0));
                const auto scene = synthesize_scene(grid.G(), rt_K, rt_P, scene_seed(rt_seed, 0, 0));
                const auto rep = waveform_roundtrip_check(pos, rt_Z, grid, scene, fourier_codes(M, !rt_raw));
                out << "M=" << M << " max_deviation=" << fmt(rep.max_deviation, 6)
                    << " gram_deviation=" << fmt(rep.gram_deviation, 6)
                    << " codes_orthonormal=" << (rep.codes_orthonormal ? "true" : "false")
                    << " passed=" << (rep.passed ? "true" : "false") << '\n';
                all = all && rep.passed;
            }
            return all ? kSuccess : kNumeric;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        return action ? action() : kUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kNumeric;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace spatialcs::cli
