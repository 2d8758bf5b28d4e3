// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/pattern_stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "spatialcs/seeding.hpp"

namespace spatialcs {

namespace {

cplx mean_phasor(const std::vector<double>& x, double u)
{
    cplx acc = 0.0;
    for (double v : x)
        acc += std::polar(1.0, u * v);
    return acc / static_cast<double>(x.size());
}

}  // namespace

cplx array_pattern(const ElementPositions& pos, double u) { return tx_pattern(pos, u) * rx_pattern(pos, u); }

cplx tx_pattern(const ElementPositions& pos, double u) { return mean_phasor(pos.xi, u); }

cplx rx_pattern(const ElementPositions& pos, double u) { return mean_phasor(pos.zeta, u); }

PatternStats analytic_stats(const PositionDistribution& tx, const PositionDistribution& rx, int M, int N, double u)
{
    if (M < 1 || N < 1)
        throw ConfigError("pattern statistics need M, N >= 1");
    if (!(tx == rx))
        throw ConfigError("closed-form pattern variances need identically distributed positions");
    if (!tx.is_even())
        throw ConfigError("closed-form pattern variances need an even position distribution");
    const double psi_xi_2u = tx.characteristic(2.0 * u).real();
    const double psi_z = (tx.characteristic(u) * rx.characteristic(u)).real();
    const double psi_z_2u = (tx.characteristic(2.0 * u) * rx.characteristic(2.0 * u)).real();
    const double mn = static_cast<double>(M) * N;
    const double s = static_cast<double>(M) + N;

    PatternStats st;
    st.u = u;
    st.mean = psi_z;
    st.var_re = (1.0 + psi_z_2u) / (2.0 * mn)
                + psi_z * ((s - 2.0) / (2.0 * mn) * (1.0 + psi_xi_2u) - psi_z * (s - 1.0) / mn);
    st.var_im = (1.0 - psi_z_2u) / (2.0 * mn) + psi_z * (s - 2.0) / (2.0 * mn) * (1.0 + psi_xi_2u);
    st.var_re = std::max(st.var_re, 0.0);
    st.var_im = std::max(st.var_im, 0.0);
    st.cov = 0.0;
    return st;
}

std::vector<PatternStats> monte_carlo_stats(const ArrayConfig& cfg, const std::vector<double>& u, long draws,
                                            std::uint64_t seed)
{
    if (draws < 2)
        throw ConfigError("Monte Carlo statistics need at least two draws");
    const std::size_t nu = u.size();
    std::vector<double> mean_re(nu, 0.0), mean_im(nu, 0.0), m2_re(nu, 0.0), m2_im(nu, 0.0), c_ri(nu, 0.0);
    for (long d = 0; d < draws; ++d) {
        const auto pos = sample_positions(cfg, derive_trial_seed(seed, "pattern-stats", static_cast<std::uint64_t>(d), 0));
        const double n = static_cast<double>(d + 1);
        for (std::size_t i = 0; i < nu; ++i) {
            const cplx b = array_pattern(pos, u[i]);
            // Welford update of means, variances and the cross moment.
            const double dr = b.real() - mean_re[i];
            const double di = b.imag() - mean_im[i];
            mean_re[i] += dr / n;
            mean_im[i] += di / n;
            m2_re[i] += dr * (b.real() - mean_re[i]);
            m2_im[i] += di * (b.imag() - mean_im[i]);
            c_ri[i] += dr * (b.imag() - mean_im[i]);
        }
    }
    std::vector<PatternStats> out(nu);
    const double denom = static_cast<double>(draws - 1);
    for (std::size_t i = 0; i < nu; ++i) {
        out[i].u = u[i];
        out[i].mean = cplx(mean_re[i], mean_im[i]);
        out[i].var_re = m2_re[i] / denom;
        out[i].var_im = m2_im[i] / denom;
        out[i].cov = c_ri[i] / denom;
    }
    return out;
}

CMatrix gram(const MeasurementMatrix& A) { return A.entries.adjoint() * A.entries; }

double toeplitz_spread(const CMatrix& Q)
{
    const Eigen::Index n = Q.rows();
    if (Q.cols() != n)
        throw ConfigError("Toeplitz spread needs a square matrix");
    double spread = 0.0;
    for (Eigen::Index d = 0; d < n; ++d)
        for (Eigen::Index i = 1; i + d < n; ++i) {
            spread = std::max(spread, std::abs(Q(i, i + d) - Q(0, d)));
            spread = std::max(spread, std::abs(Q(i + d, i) - Q(d, 0)));
        }
    return spread;
}

CoherenceSample coherence(const MeasurementMatrix& A)
{
    const Eigen::Index G = A.cols();
    if (G < 2)
        throw ConfigError("coherence needs at least two columns");
    const RVector norms = A.entries.colwise().norm().transpose();
    CoherenceSample s;
    const CVector row = A.entries.adjoint() * A.entries.col(0);  // conj(a_i^H a_0) = a_0^H a_i
    s.offdiag.reserve(static_cast<std::size_t>(G - 1));
    for (Eigen::Index i = 1; i < G; ++i) {
        const cplx v = std::conj(row(i)) / (norms(0) * norms(i));
        s.offdiag.push_back(v);
        s.mu = std::max(s.mu, std::abs(v));
    }
    if (!A.grid.is_uniform() || A.grid.G() != G) {
        const CMatrix Q = gram(A);
        s.mu = 0.0;
        for (Eigen::Index i = 0; i < G; ++i)
            for (Eigen::Index l = i + 1; l < G; ++l)
                s.mu = std::max(s.mu, std::abs(Q(i, l)) / (norms(i) * norms(l)));
    }
    s.mu = std::min(s.mu, 1.0);
    return s;
}

CoherenceSample coherence_from_positions(const ElementPositions& pos, double Z, const AngleGrid& grid)
{
    if (grid.G() < 2)
        throw ConfigError("coherence needs at least two grid points");
    if (!grid.is_uniform())
        throw ConfigError("factorized coherence requires a uniform grid");
    CoherenceSample s;
    s.offdiag.reserve(static_cast<std::size_t>(grid.G() - 1));
    for (int i = 1; i < grid.G(); ++i) {
        const double u = pi * Z * (grid.phi[static_cast<std::size_t>(i)] - grid.phi[0]);
        const cplx v = array_pattern(pos, u);
        s.offdiag.push_back(v);
        s.mu = std::max(s.mu, std::abs(v));
    }
    s.mu = std::min(s.mu, 1.0);
    return s;
}

std::vector<double> empirical_ccdf(const std::vector<double>& samples, const std::vector<double>& q_grid)
{
    if (samples.empty())
        throw ConfigError("empirical ccdf needs at least one sample");
    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(q_grid.size());
    const double n = static_cast<double>(sorted.size());
    for (double q : q_grid) {
        const auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), q);
        out.push_back(static_cast<double>(above) / n);
    }
    return out;
}

std::vector<double> sidelobe_phase_samples(const MeasurementMatrix& A)
{
    if (!A.grid.is_uniform())
        throw ConfigError("sidelobe phases are defined on uniform grids");
    const CVector row = A.entries.adjoint() * A.entries.col(0);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(A.cols() - 1));
    for (Eigen::Index i = 1; i < A.cols(); ++i)
        out.push_back(std::arg(std::conj(row(i))));
    return out;
}

UniformityTest phase_uniformity_test(const std::vector<double>& phases, int bins, double alpha)
{
    if (bins < 2)
        throw ConfigError("uniformity test needs at least two bins");
    if (phases.empty())
        throw ConfigError("uniformity test needs samples");
    std::vector<long> counts(static_cast<std::size_t>(bins), 0);
    for (double p : phases) {
        auto b = static_cast<long>(std::floor((p + pi) / (2.0 * pi) * bins));
        b = std::clamp(b, 0L, static_cast<long>(bins - 1));
        ++counts[static_cast<std::size_t>(b)];
    }
    const double expected = static_cast<double>(phases.size()) / bins;
    UniformityTest t;
    for (long c : counts) {
        const double d = static_cast<double>(c) - expected;
        t.statistic += d * d / expected;
    }
    t.dof = bins - 1;
    t.p_value = boost::math::gamma_q(0.5 * t.dof, 0.5 * t.statistic);
    t.passed = t.p_value >= alpha;
    return t;
}

}  // namespace spatialcs
