// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sstream>

#include "spatialcs/bounds.hpp"
#include "spatialcs/config_file.hpp"
#include "spatialcs/experiments.hpp"

using namespace spatialcs;

namespace {

ExperimentConfig small(Protocol p)
{
    auto c = default_config(p);
    c.Z = 30;
    c.G = 31;
    c.K = 2;
    c.trials = 12;
    c.inner_trials = 6;
    c.mn_list = {{2, 3}, {3, 3}};
    if (p == Protocol::mmv)
        c.methods = {parse_method_spec("music"), parse_method_spec("raormp"), parse_method_spec("mbmp:d=2-1")};
    return c;
}

std::string csv(const ExperimentConfig& cfg, const std::vector<ExperimentRecord>& rec)
{
    std::ostringstream os;
    write_records_csv(os, cfg, rec);
    return os.str();
}

}  // namespace

TEST_CASE("element count lists")
{
    const auto l = parse_mn_list("3x3, 4x5,10x2");
    REQUIRE(l.size() == 3);
    CHECK(l[1] == ElementCounts{4, 5});
    CHECK(format_mn_list(l) == "3x3,4x5,10x2");
    CHECK_THROWS_AS(parse_mn_list("3*3"), ConfigError);
    CHECK_THROWS_AS(parse_mn_list("0x3"), ConfigError);
    CHECK_THROWS_AS(parse_mn_list(""), ConfigError);
}

TEST_CASE("protocol names")
{
    for (auto p : {Protocol::ccdf, Protocol::nonuniform, Protocol::uniform, Protocol::mmv})
        CHECK(parse_protocol(to_string(p)) == p);
    CHECK_THROWS_AS(parse_protocol("fig3"), ConfigError);
}

TEST_CASE("defaults and presets are valid")
{
    for (auto p : {Protocol::ccdf, Protocol::nonuniform, Protocol::uniform, Protocol::mmv})
        CHECK_NOTHROW(default_config(p).validate());
    for (const auto& n : preset_names()) {
        const auto c = preset_config(n);
        CHECK_NOTHROW(c.validate());
        CHECK(c.Z == 250);
        CHECK(c.G == 251);
        CHECK(c.snr_db == 20.0);
    }
    const auto fig5 = preset_config("fig5");
    CHECK(fig5.P == 5);
    CHECK(fig5.K == 5);
    CHECK(format_mn_list(fig5.mn_list) == "3x3,4x4,5x5,6x6,7x7");
    CHECK(preset_config("fig4").inner_trials == 500);
    CHECK(preset_config("paper-fig2").trials == 2000);
    CHECK_THROWS_AS(preset_config("fig9"), ConfigError);
}

TEST_CASE("settings overlay")
{
    auto c = default_config(Protocol::nonuniform);
    apply_settings(c, {{"Z", "100"}, {"K", "4"}, {"methods", "omp, mbmp:d=2-2-1-1"}, {"seed", "18446744073709551615"}});
    CHECK(c.G == 101);
    CHECK(c.K == 4);
    CHECK(c.methods.size() == 2);
    CHECK(c.base_seed == 18446744073709551615ULL);
    apply_settings(c, {{"q_grid", "0.1:0.5:0.1"}, {"record_runtime", "yes"}});
    CHECK(c.q_grid.size() == 5);
    CHECK(c.record_runtime);
    CHECK_THROWS_AS(apply_settings(c, {{"bogus", "1"}}), ConfigError);
    CHECK_THROWS_AS(apply_settings(c, {{"K", "2.5"}}), ConfigError);
    CHECK_THROWS_AS(apply_settings(c, {{"seed", "-1"}}), ConfigError);
    CHECK_THROWS_AS(apply_settings(c, {{"q_grid", "1:0:0.1"}}), ConfigError);
    auto g = default_config(Protocol::nonuniform);
    apply_settings(g, {{"Z", "100"}, {"G", "51"}});
    CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("configuration validation")
{
    auto c = default_config(Protocol::mmv);
    c.P = 1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = default_config(Protocol::nonuniform);
    c.K = 51;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = default_config(Protocol::nonuniform);
    c.methods.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = default_config(Protocol::ccdf);
    c.mode = ArrayMode::transceiver;
    c.mn_list = {{4, 5}};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("config files: global keys overlaid by the protocol section")
{
    std::istringstream is("# comment\nK = 4\ntrials=7\n[uniform]\ntrials = 9 # inline\nmethods = focuss:p=0.5;tol=1e-5\n");
    const auto f = parse_config(is);
    const auto g = f.merged("nonuniform");
    CHECK(g.at("trials") == "7");
    const auto u = f.merged("uniform");
    CHECK(u.at("trials") == "9");
    CHECK(u.at("K") == "4");
    CHECK(u.at("methods") == "focuss:p=0.5;tol=1e-5");
    std::istringstream bad("K 4\n");
    CHECK_THROWS_AS(parse_config(bad), ConfigError);
    std::istringstream bad2("[uniform\n");
    CHECK_THROWS_AS(parse_config(bad2), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), IoError);
}

TEST_CASE("shortest round-trip number formatting")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(20) == "20");
    CHECK(format_number(1.0 / 3.0) == "0.3333333333333333");
    CHECK(std::stod(format_number(2.0 / 7.0)) == 2.0 / 7.0);
}

TEST_CASE("sweeps are independent of the worker count")
{
    for (auto p : {Protocol::nonuniform, Protocol::uniform, Protocol::mmv}) {
        auto c = small(p);
        if (p == Protocol::nonuniform)
            c.methods = {parse_method_spec("omp"), parse_method_spec("cosamp"), parse_method_spec("lasso")};
        const auto a = run_sweep(c);
        c.jobs = 3;
        const auto b = run_sweep(c);
        CHECK(csv(c, a) == csv(c, b));
        c.jobs = 1;
        c.base_seed = 2;
        CHECK(csv(c, a) != csv(c, run_sweep(c)));
    }
}

TEST_CASE("record CSV layout")
{
    auto c = small(Protocol::nonuniform);
    c.methods = {parse_method_spec("omp")};
    const auto rec = run_sweep(c);
    REQUIRE(rec.size() == 2);
    const auto text = csv(c, rec);
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    CHECK(line == kRecordCsvHeader);
    std::getline(is, line);
    CHECK(line.rfind("nonuniform,omp,2,3,6,30,31,2,1,20,12,", 0) == 0);
    CHECK(line.substr(line.size() - 3) == ",,1");
    c.record_runtime = true;
    CHECK(csv(c, run_sweep(c)).find(",,1") == std::string::npos);
}

TEST_CASE("uniform protocol is never better than the non-uniform one on shared draws")
{
    auto u = small(Protocol::uniform);
    u.methods = {parse_method_spec("omp"), parse_method_spec("ols")};
    auto n = u;
    n.protocol = Protocol::nonuniform;
    const auto ru = run_sweep(u);
    const auto rn = run_sweep(n);
    REQUIRE(ru.size() == rn.size());
    for (std::size_t i = 0; i < ru.size(); ++i)
        CHECK(ru[i].errors >= rn[i].errors);
}

TEST_CASE("failing solvers count as errors and are reported once")
{
    auto c = small(Protocol::nonuniform);
    c.K = 4;
    c.methods = {parse_method_spec("cosamp")};
    c.mn_list = {{2, 3}};
    std::ostringstream diag;
    const auto rec = run_sweep(c, &diag);
    CHECK(rec[0].error_rate == 1.0);
    const auto text = diag.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    CHECK(text.find("12 solve(s)") != std::string::npos);
}

TEST_CASE("coherence ccdf rows")
{
    auto c = default_config(Protocol::ccdf);
    c.trials = 50;
    c.mn_list = {{3, 3}, {6, 6}};
    c.q_grid = {0.1, 0.3, 0.6, 0.9};
    const auto rows = run_ccdf(c);
    REQUIRE(rows.size() == 8);
    for (const auto& r : rows)
        CHECK(r.bound == coherence_ccdf_bound(r.q, r.M, r.N, ArrayMode::independent, 51, false));
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(rows[i].empirical <= rows[i - 1].empirical);
    // more elements, lower sidelobes
    CHECK(rows[5].empirical <= rows[1].empirical);
    std::ostringstream os;
    write_ccdf_csv(os, rows);
    CHECK(os.str().rfind(std::string(kCcdfCsvHeader) + "\n0.1,", 0) == 0);
    CHECK_THROWS_AS(run_ccdf(default_config(Protocol::nonuniform)), ConfigError);
    CHECK_THROWS_AS(run_sweep(default_config(Protocol::ccdf)), ConfigError);
}
