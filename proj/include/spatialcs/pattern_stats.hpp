// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "spatialcs/common.hpp"
#include "spatialcs/geometry.hpp"
#include "spatialcs/model.hpp"

namespace spatialcs {

/// (1/MN) sum_m sum_n exp(j u (xi_m + zeta_n)).
cplx array_pattern(const ElementPositions& pos, double u);
/// (1/M) sum_m exp(j u xi_m).
cplx tx_pattern(const ElementPositions& pos, double u);
/// (1/N) sum_n exp(j u zeta_n).
cplx rx_pattern(const ElementPositions& pos, double u);

struct PatternStats {
    double u = 0.0;
    cplx mean;
    double var_re = 0.0;
    double var_im = 0.0;
    double cov = 0.0;
};

/// Closed-form mean and real/imaginary variances of the random pattern at u.
/// Only defined for identically distributed, even position laws; anything
/// else raises ConfigError.
PatternStats analytic_stats(const PositionDistribution& tx, const PositionDistribution& rx, int M, int N, double u);

/// Sample mean, variances and real/imag covariance of the pattern at each u,
/// over `draws` independent position sets.
std::vector<PatternStats> monte_carlo_stats(const ArrayConfig& cfg, const std::vector<double>& u,
                                            long draws, std::uint64_t seed);

/// Q = A^H A.
CMatrix gram(const MeasurementMatrix& A);

/// Largest deviation of any entry from the first entry of its diagonal.
double toeplitz_spread(const CMatrix& Q);

struct CoherenceSample {
    double mu = 0.0;
    std::vector<cplx> offdiag;  // normalized a_0^H a_i, i = 1..G-1
};

/// Maximum normalized inner product between distinct columns. Uniform grids
/// use the first Gram row only; other grids fall back to the full Gram.
CoherenceSample coherence(const MeasurementMatrix& A);

/// Same as coherence() on a uniform grid, evaluated through the factorization
/// beta = beta_xi * beta_zeta without building A.
CoherenceSample coherence_from_positions(const ElementPositions& pos, double Z, const AngleGrid& grid);

/// Fraction of samples strictly greater than each q. Empty samples raise ConfigError.
std::vector<double> empirical_ccdf(const std::vector<double>& samples, const std::vector<double>& q_grid);

/// arg(a_0^H a_i), i = 1..G-1, in (-pi, pi]. Requires a uniform grid.
std::vector<double> sidelobe_phase_samples(const MeasurementMatrix& A);

struct UniformityTest {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
    bool passed = false;
};

/// Pearson chi-square test of phases in (-pi, pi] against the uniform law,
/// with equiprobable bins.
UniformityTest phase_uniformity_test(const std::vector<double>& phases, int bins = 20, double alpha = 0.01);

}  // namespace spatialcs
