// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spatialcs/special_functions.hpp"

namespace spatialcs {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double lag(const AngleGrid& grid, double Z, int i) { return pi * Z * (grid.phi[static_cast<std::size_t>(i)] - grid.phi[0]); }

}  // namespace

double coherence_ccdf_bound(double q, int M, int N, ArrayMode mode, int G, bool per_pair)
{
    if (M < 1 || N < 1)
        throw ConfigError("coherence bound needs M, N >= 1");
    if (!per_pair && G < 2)
        throw ConfigError("coherence bound needs G >= 2");
    if (std::isnan(q))
        throw DomainError("coherence bound: q is NaN");
    if (q <= 0.0)
        return 1.0;
    double p;
    if (mode == ArrayMode::transceiver) {
        if (M != N)
            throw ConfigError("transceiver bound requires M == N");
        p = std::exp(-static_cast<double>(N) * q);
    } else {
        p = x_bessel_k1(2.0 * std::sqrt(static_cast<double>(M) * N) * q);
    }
    p = clamp01(p);
    if (per_pair)
        return p;
    // 1 - (1-p)^(G-1), computed without cancellation for small p.
    return clamp01(-std::expm1((G - 1) * std::log1p(-p)));
}

double uniform_recovery_constant() { return (43.0 + 12.0 * std::sqrt(7.0)) / 16.0; }

double uniform_recovery_mn(int K, int G, double epsilon)
{
    if (K < 1)
        throw ConfigError("K must be at least 1");
    if (G <= K)
        throw ConfigError("G must exceed K");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ConfigError("epsilon must lie in (0, 1)");
    const double gamma = std::sqrt(pi) * G / (2.0 * epsilon);
    if (!(gamma > std::numbers::e))
        throw DomainError("sqrt(pi) G / (2 epsilon) must exceed e");
    const double lg = std::log(gamma);
    const double bracket = lg + 0.5 * std::log(2.0 * lg);
    const double half_k = K - 0.5;
    return uniform_recovery_constant() * half_k * half_k * bracket * bracket;
}

double nonuniform_recovery_mn(int K, int G, double epsilon, double C_const, double c_const)
{
    if (K < 1)
        throw ConfigError("K must be at least 1");
    if (G < 1)
        throw ConfigError("G must be positive");
    if (!(epsilon > 0.0 && epsilon <= 1.0))
        throw ConfigError("epsilon must lie in (0, 1]");
    if (!(C_const > 0.0) || !(c_const > 0.0))
        throw ConfigError("constants must be positive");
    const double l = std::log(c_const * G / epsilon);
    return C_const * K * l * l;
}

double restricted_isometry_bound(int K, double mu)
{
    if (K < 1)
        throw ConfigError("K must be at least 1");
    return (K - 1) * mu;
}

GridVerdict isotropy_check(const PositionDistribution& tx, const PositionDistribution& rx,
                           const AngleGrid& grid, double Z, ArrayMode mode, int N)
{
    if (mode == ArrayMode::transceiver && N < 1)
        throw ConfigError("transceiver isotropy check needs N >= 1");
    GridVerdict v;
    for (int i = 1; i < grid.G(); ++i) {
        const double u = lag(grid, Z, i);
        cplx mean;
        if (mode == ArrayMode::transceiver) {
            const cplx psi = rx.characteristic(u);
            mean = rx.characteristic(2.0 * u) / static_cast<double>(N) + (1.0 - 1.0 / N) * psi * psi;
        } else {
            mean = tx.characteristic(u) * rx.characteristic(u);
        }
        if (std::abs(mean) > kCharacteristicZeroTol) {
            v.holds = false;
            v.first_index = i;
            v.value = std::abs(mean);
            v.condition = "psi_z";
            return v;
        }
    }
    return v;
}

GridVerdict uniform_condition_check(const PositionDistribution& tx, const PositionDistribution& rx,
                                    const AngleGrid& grid, double Z)
{
    GridVerdict v;
    for (int i = 1; i < grid.G(); ++i) {
        const double u = lag(grid, Z, i);
        const struct {
            const char* name;
            cplx value;
        } checks[] = {
            {"psi_xi(u)", tx.characteristic(u)},
            {"psi_xi(2u)", tx.characteristic(2.0 * u)},
            {"psi_zeta(u)", rx.characteristic(u)},
            {"psi_zeta(2u)", rx.characteristic(2.0 * u)},
        };
        for (const auto& c : checks) {
            if (std::abs(c.value) > kCharacteristicZeroTol) {
                v.holds = false;
                v.first_index = i;
                v.value = std::abs(c.value);
                v.condition = c.name;
                return v;
            }
        }
    }
    return v;
}

std::string format_verdict(const std::string& key, const GridVerdict& verdict)
{
    std::ostringstream os;
    if (verdict.holds) {
        os << key << "=holds";
    } else {
        os.precision(6);
        os << key << "=fails@i=" << verdict.first_index << " value=" << verdict.value
           << " condition=" << verdict.condition;
    }
    return os.str();
}

}  // namespace spatialcs
