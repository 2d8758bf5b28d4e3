// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"

using namespace spatialcs;

TEST_CASE("canonical grid spans [-1, 1] with spacing 2/Z")
{
    const auto g = canonical_grid(4);
    REQUIRE(g.G() == 5);
    CHECK(g.phi.front() == -1.0);
    CHECK(g.phi.back() == 1.0);
    CHECK(g.phi[2] == 0.0);
    CHECK(g.spacing == doctest::Approx(0.5));
    CHECK(g.is_uniform());
    CHECK_THROWS_AS(canonical_grid(2.5), ConfigError);
    CHECK_THROWS_AS(canonical_grid(0), ConfigError);
}

TEST_CASE("make_grid detects non-uniform spacing and rejects bad input")
{
    CHECK(make_grid({-1.0, 0.0, 1.0}, 2).is_uniform());
    CHECK_FALSE(make_grid({-1.0, 0.1, 1.0}, 2).is_uniform());
    CHECK_THROWS_AS(make_grid({0.0, 0.0, 1.0}, 2), ConfigError);
    CHECK_THROWS_AS(make_grid({-2.0, 0.0}, 2), ConfigError);
    CHECK_THROWS_AS(make_grid({0.0}, 2), ConfigError);
}

TEST_CASE("uniform characteristic function equals sinc of half the lag")
{
    const auto d = PositionDistribution::uniform(-0.5, 0.5);
    for (double u : {0.0, 0.3, pi, 2 * pi, 7.5}) {
        const double expect = u == 0.0 ? 1.0 : std::sin(u / 2) / (u / 2);
        CHECK(std::abs(d.characteristic(u) - cplx(expect, 0.0)) < 1e-15);
    }
    // zeros at every multiple of 2 pi
    for (int k = 1; k <= 50; ++k)
        CHECK(std::abs(d.characteristic(2 * pi * k)) < 1e-14);
    CHECK(d.is_even());
    CHECK_FALSE(PositionDistribution::uniform(-0.5, 0.25).is_even());
}

TEST_CASE("discrete and point-mass characteristic functions")
{
    const auto p = PositionDistribution::point_mass(0.25);
    CHECK(std::abs(p.characteristic(2.0) - std::polar(1.0, 0.5)) < 1e-15);
    const auto d = PositionDistribution::discrete({-0.5, 0.5}, {});
    CHECK(std::abs(d.characteristic(1.0) - cplx(std::cos(0.5), 0.0)) < 1e-15);
    CHECK(d.is_even());
    CHECK_FALSE(PositionDistribution::discrete({-0.5, 0.5}, {1, 2}).is_even());
    CHECK_THROWS_AS(PositionDistribution::discrete({}, {}), ConfigError);
    CHECK_THROWS_AS(PositionDistribution::discrete({1, 2}, {1}), ConfigError);
    CHECK_THROWS_AS(PositionDistribution::discrete({1}, {-1}), ConfigError);
}

TEST_CASE("distribution descriptors parse")
{
    CHECK(PositionDistribution::parse("uniform", 0.5) == PositionDistribution::uniform(-0.5, 0.5));
    CHECK(PositionDistribution::parse("uniform:-0.25,0.25", 0.5) == PositionDistribution::uniform(-0.25, 0.25));
    CHECK(PositionDistribution::parse("point:0", 0.5) == PositionDistribution::point_mass(0.0));
    CHECK(PositionDistribution::parse("discrete:-0.5/0.5@1/3", 0.5) ==
          PositionDistribution::discrete({-0.5, 0.5}, {0.25, 0.75}));
    CHECK_THROWS_AS(PositionDistribution::parse("gauss", 0.5), ConfigError);
    CHECK_THROWS_AS(PositionDistribution::parse("uniform:1", 0.5), ConfigError);
    CHECK_THROWS_AS(PositionDistribution::parse("point:x", 0.5), ConfigError);
}

TEST_CASE("array configuration validation")
{
    auto cfg = ArrayConfig::canonical(3, 4, 50);
    CHECK_NOTHROW(cfg.validate());
    cfg.M = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ArrayConfig::canonical(3, 4, 50);
    cfg.rx_dist = PositionDistribution::uniform(-0.6, 0.6);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ArrayConfig::canonical(3, 4, 50, ArrayMode::transceiver);
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = ArrayConfig::canonical(3, 4, 50);
    cfg.Z_tx = 30;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("sampled positions stay in their supports and are reproducible")
{
    const auto cfg = ArrayConfig::canonical(7, 9, 50);
    const auto a = sample_positions(cfg, 42);
    const auto b = sample_positions(cfg, 42);
    const auto c = sample_positions(cfg, 43);
    REQUIRE(a.xi.size() == 7);
    REQUIRE(a.zeta.size() == 9);
    CHECK(a.xi == b.xi);
    CHECK(a.zeta == b.zeta);
    CHECK(a.zeta != c.zeta);
    for (double x : a.xi)
        CHECK(std::abs(x) <= 0.5);
    for (double z : a.zeta)
        CHECK(std::abs(z) <= 0.5);

    const auto t = sample_positions(ArrayConfig::canonical(5, 5, 50, ArrayMode::transceiver), 1);
    CHECK(t.xi == t.zeta);
}

TEST_CASE("virtual steering vector is the Kronecker product c (x) b")
{
    ElementPositions pos{{-0.3, 0.1, 0.4}, {0.2, -0.45}};
    const double Z = 20;
    const double theta = 0.37;
    const auto a = steering_virtual(pos, Z, theta);
    REQUIRE(a.size() == 6);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 2; ++n) {
            const cplx expect = std::exp(cplx(0, pi * Z * theta * (pos.xi[m] + pos.zeta[n])));
            CHECK(std::abs(a(2 * m + n) - expect) < 1e-13);
        }
}

TEST_CASE("Nyquist virtual ULA has an orthogonal dictionary")
{
    for (auto [M, N] : {std::pair{2, 3}, std::pair{3, 3}, std::pair{4, 5}}) {
        const auto ny = nyquist_virtual_ula(M, N);
        const auto A = build_matrix(ny.config, ny.positions, ny.grid, false);
        REQUIRE(A.entries.cols() == M * N);
        const CMatrix Q = A.entries.adjoint() * A.entries;
        const CMatrix I = CMatrix::Identity(M * N, M * N) * static_cast<double>(M * N);
        CHECK((Q - I).cwiseAbs().maxCoeff() < 1e-9);
        // virtual positions fill an equispaced line
        std::vector<double> v;
        for (double x : ny.positions.xi)
            for (double z : ny.positions.zeta)
                v.push_back(x + z);
        std::sort(v.begin(), v.end());
        for (std::size_t i = 1; i < v.size(); ++i)
            CHECK(v[i] - v[i - 1] == doctest::Approx(v[1] - v[0]));
    }
}
