// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spatialcs {

MeasurementMatrix build_matrix(const ArrayConfig& cfg, const ElementPositions& positions,
                               const AngleGrid& grid, bool normalized)
{
    if (positions.M() != cfg.M || positions.N() != cfg.N)
        throw ConfigError("positions do not match the array configuration");
    MeasurementMatrix A;
    A.config = cfg;
    A.positions = positions;
    A.grid = grid;
    A.normalized = normalized;
    const Eigen::Index MN = static_cast<Eigen::Index>(cfg.M) * cfg.N;
    A.entries.resize(MN, grid.G());
    for (int g = 0; g < grid.G(); ++g)
        A.entries.col(g) = steering_virtual(positions, cfg.Z, grid.phi[static_cast<std::size_t>(g)]);
    if (normalized)
        A.entries /= std::sqrt(static_cast<double>(MN));
    return A;
}

MeasurementMatrix normalize_columns(const MeasurementMatrix& A)
{
    MeasurementMatrix out = A;
    if (!A.normalized) {
        for (Eigen::Index g = 0; g < out.entries.cols(); ++g) {
            const double n = out.entries.col(g).norm();
            if (n > 0.0)
                out.entries.col(g) /= n;
        }
        out.normalized = true;
    }
    return out;
}

CMatrix Scene::dense() const
{
    CMatrix X = CMatrix::Zero(G, gains.cols());
    for (int k = 0; k < K(); ++k)
        X.row(support[static_cast<std::size_t>(k)]) = gains.row(k);
    return X;
}

Scene synthesize_scene(int G, int K, int P, std::uint64_t seed)
{
    if (G < 1)
        throw ConfigError("grid size must be positive");
    if (K < 0 || K > G)
        throw ConfigError("sparsity K must lie in [0, G]");
    if (P < 1)
        throw ConfigError("pulse count P must be positive");
    Rng rng = make_rng(seed);
    std::vector<int> pool(static_cast<std::size_t>(G));
    std::iota(pool.begin(), pool.end(), 0);
    for (int k = 0; k < K; ++k) {
        std::uniform_int_distribution<int> pick(k, G - 1);
        std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(pick(rng))]);
    }
    Scene s;
    s.G = G;
    s.support.assign(pool.begin(), pool.begin() + K);
    std::sort(s.support.begin(), s.support.end());
    s.gains.resize(K, P);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
    for (int p = 0; p < P; ++p)
        for (int k = 0; k < K; ++k)
            s.gains(k, p) = std::polar(1.0, -phase(rng));
    return s;
}

double sigma_from_snr(double snr_db) { return std::pow(10.0, -snr_db / 20.0); }

SnapshotData observe(const MeasurementMatrix& A, const Scene& scene, double sigma, std::uint64_t seed)
{
    if (scene.G != A.cols())
        throw ConfigError("scene grid size does not match the dictionary");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw ConfigError("noise level must be finite and nonnegative");
    SnapshotData out;
    out.sigma = sigma;
    out.snr_db = sigma > 0.0 ? -20.0 * std::log10(sigma) : std::numeric_limits<double>::infinity();
    out.Y = CMatrix::Zero(A.rows(), scene.P());
    for (int k = 0; k < scene.K(); ++k)
        out.Y += A.entries.col(scene.support[static_cast<std::size_t>(k)]) * scene.gains.row(k);
    if (sigma > 0.0) {
        Rng rng = make_rng(seed);
        std::normal_distribution<double> gauss(0.0, sigma / std::sqrt(2.0));
        for (Eigen::Index p = 0; p < out.Y.cols(); ++p)
            for (Eigen::Index t = 0; t < out.Y.rows(); ++t) {
                const double re = gauss(rng);
                const double im = gauss(rng);
                out.Y(t, p) += cplx(re, im);
            }
    }
    return out;
}

CMatrix fourier_codes(int M, bool normalized)
{
    if (M < 1)
        throw ConfigError("code count must be positive");
    CMatrix S(M, M);
    const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(M)) : 1.0;
    for (int m = 0; m < M; ++m)
        for (int l = 0; l < M; ++l)
            S(m, l) = std::polar(scale, -2.0 * pi * static_cast<double>((static_cast<long long>(m) * l) % M) / M);
    return S;
}

RoundtripReport waveform_roundtrip_check(const ElementPositions& positions, double Z, const AngleGrid& grid,
                                         const Scene& scene, const CMatrix& codes)
{
    const int M = positions.M();
    const int N = positions.N();
    if (codes.rows() != M)
        throw ConfigError("code set must have one row per transmitter");
    if (scene.G != grid.G())
        throw ConfigError("scene grid size does not match the grid");

    RoundtripReport rep;
    const CMatrix W = codes * codes.adjoint();
    rep.gram_deviation = (W - CMatrix::Identity(M, M)).cwiseAbs().maxCoeff();
    rep.codes_orthonormal = rep.gram_deviation <= kRoundtripTolerance;

    const Eigen::Index MN = static_cast<Eigen::Index>(M) * N;
    CMatrix reference = CMatrix::Zero(MN, scene.P());
    for (int k = 0; k < scene.K(); ++k) {
        const double theta = grid.phi[static_cast<std::size_t>(scene.support[static_cast<std::size_t>(k)])];
        reference += steering_virtual(positions, Z, theta) * scene.gains.row(k);
    }

    for (int p = 0; p < scene.P(); ++p) {
        CMatrix r = CMatrix::Zero(N, codes.cols());
        for (int k = 0; k < scene.K(); ++k) {
            const double theta = grid.phi[static_cast<std::size_t>(scene.support[static_cast<std::size_t>(k)])];
            const CVector b = steering_rx(positions, Z, theta);
            const CVector c = steering_tx(positions, Z, theta);
            r += scene.gains(k, p) * b * (c.transpose() * codes);
        }
        const CMatrix filtered = r * codes.adjoint();  // N x M
        const Eigen::Map<const CVector> y(filtered.data(), MN);
        rep.max_deviation = std::max(rep.max_deviation, (y - reference.col(p)).cwiseAbs().maxCoeff());
    }
    rep.passed = rep.codes_orthonormal && rep.max_deviation <= kRoundtripTolerance;
    return rep;
}

}  // namespace spatialcs
