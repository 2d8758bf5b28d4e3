// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one line per criterion, nonzero exit if any criterion fails.
// Pass criterion numbers as arguments to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spatialcs/bounds.hpp"
#include "spatialcs/cli.hpp"
#include "spatialcs/experiments.hpp"
#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"
#include "spatialcs/pattern_stats.hpp"
#include "spatialcs/recovery.hpp"
#include "spatialcs/registry.hpp"
#include "spatialcs/seeding.hpp"
#include "spatialcs/special_functions.hpp"

using namespace spatialcs;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        pass = pass && ok;
        notes.push_back((ok ? "ok: " : "FAILED: ") + what);
    }
    void note(const std::string& what) { notes.push_back("info: " + what); }
};

std::string num(double v, int digits = 6)
{
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------

Outcome toeplitz_exactness()
{
    Outcome o;
    const auto cfg = ArrayConfig::canonical(6, 6, 50);
    const auto grid = canonical_grid(50);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const auto pos = sample_positions(cfg, derive_trial_seed(kSeed, "accept/toeplitz", t, 0));
        worst = std::max(worst, toeplitz_spread(gram(build_matrix(cfg, pos, grid, false))));
    }
    o.require(worst <= 1e-10, "max within-diagonal spread " + num(worst) + " <= 1e-10 over 50 arrays");
    return o;
}

Outcome isotropy()
{
    Outcome o;
    const int M = 5, N = 5;
    const double Z = 50;
    const long T = 100000;
    const auto cfg = ArrayConfig::canonical(M, N, Z);
    const auto grid = canonical_grid(Z);
    std::vector<cplx> sum(static_cast<std::size_t>(grid.G() - 1), 0.0);
    for (long t = 0; t < T; ++t) {
        const auto pos = sample_positions(cfg, derive_trial_seed(kSeed, "accept/isotropy", t, 0));
        const auto c = coherence_from_positions(pos, Z, grid);
        for (std::size_t i = 0; i < sum.size(); ++i)
            sum[i] += c.offdiag[i];
    }
    // Toeplitz structure: every off-diagonal entry of the normalized Gram is one of these lags
    double worst = 0.0;
    for (const auto& s : sum)
        worst = std::max(worst, std::abs(s / static_cast<double>(T)));
    const double tol = 4.0 * std::sqrt(1.0 / (M * N * static_cast<double>(T)));
    o.require(worst <= tol, "max |mean off-diagonal| " + num(worst) + " <= " + num(tol) + " (M=N=5, Z=50, 1e5 draws)");
    const auto u = PositionDistribution::uniform(-0.5, 0.5);
    o.require(isotropy_check(u, u, grid, Z).holds, "isotropy_check holds for uniform/uniform");
    const auto p = PositionDistribution::point_mass(0.0);
    const auto v = isotropy_check(p, p, grid, Z);
    o.require(!v.holds, "point-mass counterexample: " + format_verdict("isotropy", v));
    return o;
}

Outcome variance_formulas()
{
    Outcome o;
    const auto cfg = ArrayConfig::canonical(10, 10, 50);
    const std::vector<double> lags = {pi, 2 * pi, 3 * pi};
    const auto mc = monte_carlo_stats(cfg, lags, 100000, kSeed);
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const auto a = analytic_stats(cfg.tx_dist, cfg.rx_dist, 10, 10, lags[i]);
        const std::string at = "u=" + std::to_string(i + 1) + "pi ";
        if (a.var_re > 1e-4) {
            const double rel = std::abs(mc[i].var_re - a.var_re) / a.var_re;
            o.require(rel <= 0.05, at + "var_re mc " + num(mc[i].var_re) + " vs " + num(a.var_re) + " rel " + num(rel, 3));
        }
        if (a.var_im > 1e-4) {
            const double rel = std::abs(mc[i].var_im - a.var_im) / a.var_im;
            o.require(rel <= 0.05, at + "var_im mc " + num(mc[i].var_im) + " vs " + num(a.var_im) + " rel " + num(rel, 3));
        }
    }
    return o;
}

Outcome coherence_ccdf()
{
    Outcome o;
    auto cfg = default_config(Protocol::ccdf);
    cfg.Z = 250;
    cfg.G = 251;
    cfg.trials = 2000;
    cfg.base_seed = kSeed;

    const auto check = [&](const std::vector<CcdfRow>& rows, const std::string& label) {
        double worst = -1.0;
        double at = 0.0;
        for (const auto& r : rows) {
            if (r.bound > 0.9)
                continue;
            if (r.empirical - r.bound > worst) {
                worst = r.empirical - r.bound;
                at = r.q;
            }
        }
        o.require(worst <= 0.02, label + ": max(empirical - bound) where bound <= 0.9 is " + num(worst, 3) + " at q=" +
                                     num(at, 3) + " (tol 0.02)");
    };

    cfg.mn_list = {{15, 15}};
    cfg.mode = ArrayMode::independent;
    const auto indep = run_ccdf(cfg);
    check(indep, "independent M=N=15");

    cfg.mn_list = {{30, 30}};
    cfg.mode = ArrayMode::transceiver;
    const auto trx = run_ccdf(cfg);
    check(trx, "transceiver N=30");

    double vertical = 0.0;
    for (std::size_t i = 0; i < indep.size(); ++i)
        vertical = std::max(vertical, std::abs(indep[i].empirical - trx[i].empirical));
    o.require(vertical <= 0.05, "transceiver N'=30 vs independent M=N=15 ccdf sup-distance " + num(vertical, 3) +
                                    " (tol 0.05)");

    // Distance along the coherence axis between the two sample distributions, for reference.
    cfg.mode = ArrayMode::independent;
    cfg.mn_list = {{15, 15}};
    auto a = coherence_samples(cfg)[0];
    cfg.mode = ArrayMode::transceiver;
    cfg.mn_list = {{30, 30}};
    auto b = coherence_samples(cfg)[0];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double horizontal = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        horizontal = std::max(horizontal, std::abs(a[i] - b[i]));
    o.note("quantile (coherence-axis) sup-distance between the same curves " + num(horizontal, 3) +
           "; medians " + num(a[a.size() / 2], 3) + " vs " + num(b[b.size() / 2], 3));
    return o;
}

Outcome phase_uniformity()
{
    Outcome o;
    const auto cfg = ArrayConfig::canonical(10, 10, 50);
    const auto grid = canonical_grid(50);
    std::vector<double> phases;
    phases.reserve(100000);
    for (int t = 0; phases.size() < 100000; ++t) {
        const auto pos = sample_positions(cfg, derive_trial_seed(kSeed, "accept/phase", t, 0));
        for (double p : sidelobe_phase_samples(build_matrix(cfg, pos, grid, true)))
            if (phases.size() < 100000)
                phases.push_back(p);
    }
    const auto t = phase_uniformity_test(phases, 20, 0.01);
    o.require(t.passed, "chi-square " + num(t.statistic, 4) + " on " + std::to_string(t.dof) + " dof, p=" +
                            num(t.p_value, 3) + " (alpha 0.01, 1e5 pooled phases)");
    return o;
}

Outcome special_functions()
{
    Outcome o;
    boost::math::quadrature::exp_sinh<double> integrator;
    double worst = 0.0;
    for (int i = 0; i <= 990; ++i) {
        const double x = 0.1 + 0.01 * i;
        const double ref = integrator.integrate([x](double t) {
            const double c = std::cosh(t);
            return std::isinf(c) ? 0.0 : std::exp(-x * c) * c;
        });
        worst = std::max(worst, std::abs(bessel_k1(x) - ref) / ref);
    }
    o.require(worst <= 1e-8, "bessel_k1 max relative error vs quadrature on [0.1, 10]: " + num(worst, 3));

    double resid = 0.0;
    // log-spaced toward 0 and toward the branch point
    std::vector<double> ys;
    for (double e = -300; e < -0.5; e += 0.5)
        ys.push_back(-std::pow(10.0, e));
    for (double e = -14; e <= -1; e += 0.25)
        ys.push_back(-std::exp(-1.0) * (1.0 - std::pow(10.0, e)));
    for (double y : ys) {
        const double w = lambert_w_minus1(y);
        resid = std::max(resid, std::abs(w * std::exp(w) - y) / std::abs(y));
    }
    o.require(resid <= 1e-12, "lambert_w_minus1 max relative round-trip residual " + num(resid, 3));
    o.require(lambert_w_minus1(-1.0 / std::numbers::e) == -1.0, "W_-1(-1/e) == -1 exactly");

    for (double gamma : {100.0, 200.0, 500.0, 1e3, 1e4, 1e6}) {
        const double exact = lambert_w_minus1(-1.0 / (gamma * gamma));
        const double rel = std::abs(lambert_w_minus1_asymptotic(gamma) - exact) / std::abs(exact);
        o.require(rel <= 0.02, "asymptotic seed at gamma=" + num(gamma) + " relative gap " + num(rel, 4));
    }
    return o;
}

Outcome uniform_bound()
{
    Outcome o;
    using big = boost::multiprecision::cpp_bin_float_50;
    const big C = (big(43) + 12 * sqrt(big(7))) / 16;
    const big gamma = sqrt(boost::math::constants::pi<big>()) * 251 / (2 * big("0.1"));
    const big lg = log(gamma);
    const big bracket = lg + log(2 * lg) / 2;
    const big h = big(5) - big(1) / 2;
    const double ref = static_cast<double>(C * h * h * bracket * bracket);
    const double got = uniform_recovery_mn(5, 251, 0.1);
    const double rel = std::abs(got - ref) / ref;
    o.require(rel <= 1e-6, "uniform_recovery_mn(5, 251, 0.1) = " + num(got, 12) + " vs 50-digit " + num(ref, 12) +
                               " rel " + num(rel, 3));
    const double c = uniform_recovery_constant();
    const double c_ref = static_cast<double>(C);
    o.require(std::abs(c - c_ref) <= 2 * std::numeric_limits<double>::epsilon() * c_ref,
              "C = " + num(c, 17) + " vs (43+12 sqrt 7)/16 = " + num(c_ref, 17));
    o.require(std::abs(c - 4.6718) < 5e-5, "C rounds to the printed 4.6718");
    return o;
}

Outcome l0_equivalence()
{
    Outcome o;
    const std::vector<std::string> names = {"omp", "ols", "cosamp", "lasso", "mbmp"};
    std::map<std::string, int> agree;
    int oracle_truth = 0;
    int accepted = 0;
    long drawn = 0;
    Rng pick = make_rng(derive_trial_seed(kSeed, "accept/l0-shapes", 0, 0));
    while (accepted < 200) {
        const int K = 1 + accepted % 2;
        const int Z = std::uniform_int_distribution<int>(10, 29)(pick);
        const int M = std::uniform_int_distribution<int>(3, 5)(pick);
        const int N = std::uniform_int_distribution<int>((12 + M - 1) / M, 6)(pick);
        const auto cfg = ArrayConfig::canonical(M, N, Z);
        const auto grid = canonical_grid(Z);
        ElementPositions pos;
        double mu = 1.0;
        // rejection sampling on the coherence condition K < (1 + 1/mu) / 2
        do {
            pos = sample_positions(cfg, derive_trial_seed(kSeed, "accept/l0-positions", drawn++, 0));
            mu = coherence_from_positions(pos, Z, grid).mu;
        } while (!(K < 0.5 * (1.0 + 1.0 / mu)));
        const auto A = build_matrix(cfg, pos, grid, true);
        const auto scene = synthesize_scene(grid.G(), K, 1, derive_trial_seed(kSeed, "accept/l0-scene", accepted, 0));
        const auto data = observe(A, scene, 0.0, 0);
        const auto problem = RecoveryProblem::from(A, data, K);
        const auto oracle = l0_oracle(problem).support;
        oracle_truth += oracle == scene.support;
        for (const auto& n : names) {
            MethodSpec spec = parse_method_spec(n);
            if (n == "mbmp")
                spec.params["d"] = K == 1 ? "2" : "2-1";
            agree[n] += run_method(spec, problem).support == oracle;
        }
        ++accepted;
    }
    o.note("oracle support equals the generating support in " + std::to_string(oracle_truth) + "/200; " +
           std::to_string(drawn) + " arrays drawn for 200 accepted");
    for (const auto& n : names)
        o.require(agree[n] == 200, n + " matches the l0 oracle in " + std::to_string(agree[n]) + "/200");
    return o;
}

Outcome reduction_identities()
{
    Outcome o;
    int smv = 0;
    int mmv = 0;
    for (int t = 0; t < 100; ++t) {
        const int M = 2 + t % 3;
        const int N = 2 + (t / 3) % 3;
        const int K = 2 + t % 4;
        const int P = t < 50 ? 1 : 2 + t % 5;
        const auto cfg = ArrayConfig::canonical(M, N, 50);
        const auto grid = canonical_grid(50);
        const auto pos = sample_positions(cfg, derive_trial_seed(kSeed, "accept/reduction", t, 0));
        const auto A = build_matrix(cfg, pos, grid, true);
        const auto scene = synthesize_scene(grid.G(), K, P, derive_trial_seed(kSeed, "accept/reduction-scene", t, 0));
        const auto data = observe(A, scene, sigma_from_snr(10.0), derive_trial_seed(kSeed, "accept/reduction-noise", t, 0));
        const auto problem = RecoveryProblem::from(A, data, K);
        const auto tree = mbmp(problem, {std::vector<int>(static_cast<std::size_t>(K), 1)}).support;
        if (P == 1)
            smv += tree == ols(problem).support;
        else
            mmv += tree == ra_ormp(problem).support;
    }
    o.require(smv == 50, "P=1: mbmp(d=1..1) == ols in " + std::to_string(smv) + "/50");
    o.require(mmv == 50, "P>1: mbmp(d=1..1) == ra_ormp in " + std::to_string(mmv) + "/50");
    return o;
}

const ExperimentRecord& find(const std::vector<ExperimentRecord>& r, const std::string& method, ElementCounts mn)
{
    for (const auto& x : r)
        if (x.method == method && x.M == mn.first && x.N == mn.second)
            return x;
    throw std::runtime_error("missing record " + method);
}

double binomial_sd(double p, long n) { return std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

void print_table(Outcome& o, const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& r)
{
    for (const auto& m : cfg.methods) {
        std::string line = m.label() + ":";
        for (const auto& mn : cfg.mn_list)
            line += " " + std::to_string(mn.first * mn.second) + "->" + num(find(r, m.label(), mn).error_rate, 3);
        o.note(line);
    }
}

Outcome desk_nonuniform()
{
    Outcome o;
    auto cfg = default_config(Protocol::nonuniform);
    cfg.base_seed = kSeed;
    const auto r = run_sweep(cfg);
    print_table(o, cfg, r);
    for (const auto& m : cfg.methods) {
        bool mono = true;
        std::string where;
        for (std::size_t i = 0; i < cfg.mn_list.size(); ++i)
            for (std::size_t j = i + 1; j < cfg.mn_list.size(); ++j) {
                const auto& a = find(r, m.label(), cfg.mn_list[i]);
                const auto& b = find(r, m.label(), cfg.mn_list[j]);
                const double sd = std::hypot(binomial_sd(a.error_rate, a.trials), binomial_sd(b.error_rate, b.trials));
                if (b.error_rate - a.error_rate > 2.0 * sd) {
                    mono = false;
                    where = format_mn_list({cfg.mn_list[i]}) + "->" + format_mn_list({cfg.mn_list[j]});
                }
            }
        o.require(mono, m.label() + " non-increasing in MN within 2 sigma" + (mono ? "" : " (violated " + where + ")"));
    }
    const auto last = cfg.mn_list.back();
    const double bf = find(r, "beamform", last).error_rate;
    for (const auto& m : cfg.methods) {
        if (m.name == "beamform")
            continue;
        const double e = find(r, m.label(), last).error_rate;
        o.require(bf >= e, "largest MN: beamform " + num(bf, 3) + " >= " + m.label() + " " + num(e, 3));
    }
    const auto mid = cfg.mn_list[cfg.mn_list.size() / 2];
    for (const char* good : {"lasso", "cosamp", "focuss", "mbmp:d=2-2-1"})
        for (const char* greedy : {"omp", "ols"}) {
            const double g = find(r, good, mid).error_rate;
            const double h = find(r, greedy, mid).error_rate;
            o.require(g <= h, "mid MN=" + std::to_string(mid.first * mid.second) + ": " + good + " " + num(g, 3) +
                                  " <= " + greedy + " " + num(h, 3));
        }
    return o;
}

Outcome desk_uniform()
{
    Outcome o;
    auto u = default_config(Protocol::uniform);
    u.base_seed = kSeed;
    u.inner_trials = 500;
    auto n = u;
    n.protocol = Protocol::nonuniform;
    const auto ru = run_sweep(u);
    const auto rn = run_sweep(n);
    o.note("uniform protocol (" + std::to_string(u.trials) + " arrays x " + std::to_string(u.inner_trials) + " scenes):");
    print_table(o, u, ru);
    o.note("non-uniform protocol on the same first scenes:");
    print_table(o, n, rn);
    bool dominated = true;
    for (std::size_t i = 0; i < ru.size(); ++i)
        if (ru[i].error_rate < rn[i].error_rate) {
            dominated = false;
            o.note("uniform < non-uniform for " + ru[i].method + " at MN=" + std::to_string(ru[i].M * ru[i].N));
        }
    o.require(dominated, "uniform error rate >= non-uniform error rate for every (method, MN)");
    const std::string tree = u.methods.back().label();
    for (const char* greedy : {"omp", "ols"}) {
        double gap_u = 0.0;
        double gap_n = 0.0;
        for (const auto& mn : u.mn_list) {
            gap_u += find(ru, greedy, mn).error_rate - find(ru, tree, mn).error_rate;
            gap_n += find(rn, greedy, mn).error_rate - find(rn, tree, mn).error_rate;
        }
        o.require(gap_u > gap_n, std::string(greedy) + " - " + tree + " summed gap: uniform " + num(gap_u, 3) +
                                     " > non-uniform " + num(gap_n, 3));
    }
    return o;
}

Outcome desk_mmv()
{
    Outcome o;
    auto cfg = default_config(Protocol::mmv);
    cfg.base_seed = kSeed;
    const auto r = run_sweep(cfg);
    print_table(o, cfg, r);
    for (const auto& mn : cfg.mn_list) {
        const double mu = find(r, "music", mn).error_rate;
        for (const auto& m : cfg.methods) {
            if (m.name == "music")
                continue;
            const double e = find(r, m.label(), mn).error_rate;
            o.require(e <= mu, "MN=" + std::to_string(mn.first * mn.second) + ": " + m.label() + " " + num(e, 3) +
                                   " <= music " + num(mu, 3));
        }
    }
    const auto tree = std::find_if(cfg.methods.begin(), cfg.methods.end(), [](const MethodSpec& m) { return m.name == "mbmp"; });
    if (tree == cfg.methods.end()) {
        o.require(false, "mmv configuration has no mbmp method");
        return o;
    }
    auto single = cfg;
    single.protocol = Protocol::nonuniform;
    single.P = 1;
    single.methods = {*tree};
    const auto r1 = run_sweep(single);
    for (const auto& mn : cfg.mn_list) {
        const double e5 = find(r, tree->label(), mn).error_rate;
        const double e1 = find(r1, tree->label(), mn).error_rate;
        o.require(e5 <= e1, "MN=" + std::to_string(mn.first * mn.second) + ": mbmp P=5 " + num(e5, 3) + " <= P=1 " +
                                num(e1, 3));
    }
    return o;
}

Outcome waveform_roundtrip()
{
    Outcome o;
    const auto grid = canonical_grid(50);
    for (int M : {1, 2, 4, 8}) {
        const auto cfg = ArrayConfig::canonical(M, 4, 50);
        const auto pos = sample_positions(cfg, derive_trial_seed(kSeed, "accept/roundtrip", M, 0));
        const auto scene = synthesize_scene(grid.G(), 3, 4, derive_trial_seed(kSeed, "accept/roundtrip-scene", M, 0));
        const auto rep = waveform_roundtrip_check(pos, 50, grid, scene, fourier_codes(M, true));
        o.require(rep.max_deviation <= 1e-10, "M=" + std::to_string(M) + " max deviation " + num(rep.max_deviation, 3));
    }
    return o;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

Outcome determinism()
{
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "spatialcs-acceptance-determinism";
    std::filesystem::create_directories(dir);
    struct Case {
        std::string name;
        std::vector<std::string> args;
    };
    const std::vector<Case> cases = {
        {"nonuniform", {"sweep", "--protocol", "nonuniform", "--trials", "40", "--seed", "7"}},
        {"uniform", {"sweep", "--protocol", "uniform", "--trials", "6", "--inner-trials", "20", "--mn", "3x3,4x4"}},
        {"mmv", {"sweep", "--protocol", "mmv", "--trials", "40"}},
        {"ccdf", {"coherence-ccdf", "--trials", "200"}},
    };
    for (const auto& c : cases) {
        std::vector<std::string> outputs;
        for (const char* jobs : {"1", "1", "3"}) {
            const auto path = dir / (c.name + "-" + jobs + "-" + std::to_string(outputs.size()) + ".csv");
            std::vector<std::string> args = {"spatialcs"};
            args.insert(args.end(), c.args.begin(), c.args.end());
            args.insert(args.end(), {"--jobs", jobs, "--out", path.string()});
            std::vector<const char*> argv;
            for (const auto& a : args)
                argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            if (code != 0)
                o.require(false, c.name + " run exited " + std::to_string(code) + ": " + err.str());
            outputs.push_back(slurp(path));
        }
        const bool same = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
        o.require(same, c.name + ": reruns and --jobs 1/3 byte-identical (" + std::to_string(outputs[0].size()) +
                            " bytes)");
    }
    std::filesystem::remove_all(dir);
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"toeplitz exactness", toeplitz_exactness},
        {"isotropy", isotropy},
        {"variance formulas", variance_formulas},
        {"coherence ccdf bound", coherence_ccdf},
        {"phase uniformity", phase_uniformity},
        {"special functions", special_functions},
        {"uniform recovery bound", uniform_bound},
        {"l0-oracle equivalence", l0_equivalence},
        {"reduction identities", reduction_identities},
        {"desk non-uniform ordering", desk_nonuniform},
        {"desk uniform protocol", desk_uniform},
        {"desk multiple snapshots", desk_mmv},
        {"waveform roundtrip", waveform_roundtrip},
        {"determinism", determinism},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failed = 0;
    std::vector<std::string> summary;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (const auto& n : o.notes)
            std::cout << "    " << n << '\n';
        char line[160];
        std::snprintf(line, sizeof line, "criterion %2d %-28s %s  (%.1f s)", id, criteria[i].first.c_str(),
                      o.pass ? "PASS" : "FAIL", secs);
        std::cout << line << '\n' << std::flush;
        summary.push_back(line);
        failed += !o.pass;
    }
    std::cout << "\nsummary\n";
    for (const auto& s : summary)
        std::cout << s << '\n';
    std::cout << (summary.size() - static_cast<std::size_t>(failed)) << "/" << summary.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
