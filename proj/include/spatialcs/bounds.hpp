// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "spatialcs/common.hpp"
#include "spatialcs/geometry.hpp"

namespace spatialcs {

/// Upper bound on Pr(normalized sidelobe > q).
///
/// Independent arrays use x K1(x) with x = 2 sqrt(MN) q; transceiver arrays
/// (M = N) use exp(-N q). With per_pair false the bound is extended to the
/// coherence, i.e. the maximum over G-1 sidelobes: 1 - (1 - p)^(G-1).
/// Result is clamped to [0, 1].
double coherence_ccdf_bound(double q, int M, int N, ArrayMode mode, int G, bool per_pair);

/// (43 + 12 sqrt 7) / 16.
double uniform_recovery_constant();

/// Element count MN sufficient for recovering every K-sparse scene with
/// probability 1 - epsilon on a G-point grid:
/// C (K - 1/2)^2 [ln g + ln(2 ln g) / 2]^2 with g = sqrt(pi) G / (2 epsilon).
/// Throws ConfigError for K < 1, G <= K or epsilon outside (0,1), and
/// DomainError when g <= e.
double uniform_recovery_mn(int K, int G, double epsilon);

/// C_const K ln^2(c_const G / epsilon). The constants are not calibrated;
/// only the K log^2 G scaling is meaningful. epsilon in (0, 1].
double nonuniform_recovery_mn(int K, int G, double epsilon, double C_const = 1.0, double c_const = 1.0);

/// Upper bound (K - 1) mu on the restricted isometry constant of order K.
double restricted_isometry_bound(int K, double mu);

/// Outcome of a characteristic-function test over the canonical sidelobe lags
/// u_i = pi Z (phi_i - phi_0), i = 1..G-1 (0-based grid indices).
struct GridVerdict {
    bool holds = true;
    int first_index = -1;   // first violating grid index
    double value = 0.0;     // offending |value|
    std::string condition;  // which characteristic function failed
};

inline constexpr double kCharacteristicZeroTol = 1e-12;

/// Zero mean sidelobe at every grid lag (E[A^H A] = MN I). Independent arrays test
/// psi_xi psi_zeta; transceiver arrays test the mean pattern
/// psi(2u)/N + (1 - 1/N) psi(u)^2 of the shared receive distribution.
GridVerdict isotropy_check(const PositionDistribution& tx, const PositionDistribution& rx,
                           const AngleGrid& grid, double Z, ArrayMode mode = ArrayMode::independent,
                           int N = 1);

/// All four of psi_xi(u), psi_xi(2u), psi_zeta(u), psi_zeta(2u) vanish at every lag.
GridVerdict uniform_condition_check(const PositionDistribution& tx, const PositionDistribution& rx,
                                    const AngleGrid& grid, double Z);

/// `isotropy=holds` or `isotropy=fails@i=<index>` followed by the value.
std::string format_verdict(const std::string& key, const GridVerdict& verdict);

}  // namespace spatialcs
