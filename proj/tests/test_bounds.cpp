// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spatialcs/bounds.hpp"
#include "spatialcs/geometry.hpp"

using namespace spatialcs;

namespace {

double k1_quadrature(double x)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([x](double t) {
            const double c = std::cosh(t);
            return std::isinf(c) ? 0.0 : std::exp(-x * c) * c;
        });
}

}  // namespace

TEST_CASE("per-pair ccdf bound for independent arrays is x K1(x), x = 2 sqrt(MN) q")
{
    for (double q : {0.01, 0.1, 0.2, 0.35}) {
        const double x = 2.0 * std::sqrt(15.0 * 15.0) * q;
        const double ref = x * k1_quadrature(x);
        CHECK(coherence_ccdf_bound(q, 15, 15, ArrayMode::independent, 251, true) ==
              doctest::Approx(ref).epsilon(1e-10));
    }
    // M = N = 1, q = 3 -> 6 K1(6)
    CHECK(coherence_ccdf_bound(3.0, 1, 1, ArrayMode::independent, 2, true) ==
          doctest::Approx(6.0 * k1_quadrature(6.0)).epsilon(1e-10));
}

TEST_CASE("per-pair ccdf bound for transceivers is exp(-N q)")
{
    CHECK(coherence_ccdf_bound(0.1, 30, 30, ArrayMode::transceiver, 251, true) ==
          doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(coherence_ccdf_bound(0.1, 20, 30, ArrayMode::transceiver, 251, true), ConfigError);
}

TEST_CASE("coherence ccdf bound is the union over G - 1 sidelobes")
{
    for (double q : {0.05, 0.15, 0.3}) {
        const double p = coherence_ccdf_bound(q, 10, 10, ArrayMode::independent, 251, true);
        const double expect = 1.0 - std::pow(1.0 - p, 250);
        CHECK(coherence_ccdf_bound(q, 10, 10, ArrayMode::independent, 251, false) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(coherence_ccdf_bound(0.0, 10, 10, ArrayMode::independent, 251, false) == 1.0);
    CHECK(coherence_ccdf_bound(-1.0, 10, 10, ArrayMode::independent, 251, false) == 1.0);
    double prev = 1.0;
    for (double q = 0.0; q <= 1.0; q += 0.01) {
        const double b = coherence_ccdf_bound(q, 15, 15, ArrayMode::independent, 251, false);
        CHECK(b >= 0.0);
        CHECK(b <= prev);
        prev = b;
    }
    CHECK_THROWS_AS(coherence_ccdf_bound(0.1, 0, 10, ArrayMode::independent, 251, false), ConfigError);
    CHECK_THROWS_AS(coherence_ccdf_bound(0.1, 10, 10, ArrayMode::independent, 1, false), ConfigError);
}

TEST_CASE("uniform recovery element count matches a 50-digit evaluation")
{
    using big = boost::multiprecision::cpp_bin_float_50;
    const auto oracle = [](int K, int G, double eps) {
        const big C = (big(43) + 12 * sqrt(big(7))) / 16;
        const big gamma = sqrt(boost::math::constants::pi<big>()) * G / (2 * big(eps));
        const big lg = log(gamma);
        const big bracket = lg + log(2 * lg) / 2;
        const big h = big(K) - big(1) / 2;
        return static_cast<double>(C * h * h * bracket * bracket);
    };
    CHECK(uniform_recovery_constant() == doctest::Approx((43.0 + 12.0 * std::sqrt(7.0)) / 16.0).epsilon(1e-16));
    CHECK(uniform_recovery_constant() == doctest::Approx(4.6718).epsilon(1e-4));
    for (auto [K, G, eps] : {std::tuple{5, 251, 0.1}, std::tuple{1, 51, 0.5}, std::tuple{10, 1001, 1e-3}})
        CHECK(uniform_recovery_mn(K, G, eps) == doctest::Approx(oracle(K, G, eps)).epsilon(1e-12));
    CHECK(uniform_recovery_mn(5, 251, 0.1) == doctest::Approx(7791.0).epsilon(1e-3));
    CHECK_THROWS_AS(uniform_recovery_mn(0, 251, 0.1), ConfigError);
    CHECK_THROWS_AS(uniform_recovery_mn(5, 251, 1.5), ConfigError);
    CHECK_THROWS_AS(uniform_recovery_mn(5, 5, 0.1), ConfigError);
}

TEST_CASE("uniform recovery count grows with K and G and shrinks with epsilon")
{
    CHECK(uniform_recovery_mn(6, 251, 0.1) > uniform_recovery_mn(5, 251, 0.1));
    CHECK(uniform_recovery_mn(5, 501, 0.1) > uniform_recovery_mn(5, 251, 0.1));
    CHECK(uniform_recovery_mn(5, 251, 0.2) < uniform_recovery_mn(5, 251, 0.1));
}

TEST_CASE("non-uniform recovery count is C K log^2(cG/eps)")
{
    CHECK(nonuniform_recovery_mn(5, 251, 1.0) == doctest::Approx(5.0 * std::pow(std::log(251.0), 2)).epsilon(1e-14));
    CHECK(nonuniform_recovery_mn(5, 251, 1.0) == doctest::Approx(152.65).epsilon(1e-4));
    CHECK(nonuniform_recovery_mn(3, 51, 0.1, 2.0, 3.0) ==
          doctest::Approx(2.0 * 3 * std::pow(std::log(3.0 * 51 / 0.1), 2)).epsilon(1e-14));
    CHECK_THROWS_AS(nonuniform_recovery_mn(5, 251, 0.0), ConfigError);
    CHECK_THROWS_AS(nonuniform_recovery_mn(5, 251, 0.5, -1.0), ConfigError);
}

TEST_CASE("restricted isometry bound (K - 1) mu")
{
    CHECK(restricted_isometry_bound(5, 0.1) == doctest::Approx(0.4));
    CHECK(restricted_isometry_bound(1, 0.9) == 0.0);
}

TEST_CASE("isotropy holds for uniform arrays on the canonical grid")
{
    const auto u = PositionDistribution::uniform(-0.5, 0.5);
    const auto g = canonical_grid(50);
    CHECK(isotropy_check(u, u, g, 50).holds);
    CHECK(uniform_condition_check(u, u, g, 50).holds);
    CHECK(isotropy_check(u, u, g, 50, ArrayMode::transceiver, 10).holds);
    CHECK(format_verdict("isotropy", isotropy_check(u, u, g, 50)) == "isotropy=holds");
}

TEST_CASE("isotropy fails for a point mass and on a finer grid")
{
    const auto u = PositionDistribution::uniform(-0.5, 0.5);
    const auto p = PositionDistribution::point_mass(0.0);
    const auto g = canonical_grid(50);
    // one factor vanishing is enough for the product
    CHECK(isotropy_check(p, u, g, 50).holds);
    const auto both = isotropy_check(p, p, g, 50);
    CHECK_FALSE(both.holds);
    CHECK(both.first_index == 1);
    CHECK(both.value == doctest::Approx(1.0));
    CHECK(format_verdict("isotropy", both).rfind("isotropy=fails@i=1", 0) == 0);
    CHECK_FALSE(uniform_condition_check(p, u, g, 50).holds);

    std::vector<double> fine;
    for (int i = 0; i <= 100; ++i)
        fine.push_back(-1.0 + i * 0.02);
    const auto v = isotropy_check(u, u, make_grid(fine, 50), 50);
    CHECK_FALSE(v.holds);
    CHECK(v.first_index == 1);
    CHECK(v.value == doctest::Approx(std::pow(2.0 / pi, 2)).epsilon(1e-9));
}
