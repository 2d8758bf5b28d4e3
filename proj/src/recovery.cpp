// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "recovery_internal.hpp"
#include "spatialcs/linalg.hpp"

namespace spatialcs {

RecoveryProblem RecoveryProblem::from(const MeasurementMatrix& A, const SnapshotData& data, int K)
{
    RecoveryProblem p;
    p.A = A.entries;
    p.Y = data.Y;
    p.K = K;
    p.sigma = data.sigma;
    p.normalized = A.normalized;
    return p;
}

void RecoveryProblem::validate() const
{
    if (A.rows() == 0 || A.cols() == 0)
        throw ConfigError("empty dictionary");
    if (Y.rows() != A.rows())
        throw ConfigError("observation rows do not match the dictionary");
    if (Y.cols() < 1)
        throw ConfigError("observations need at least one snapshot");
    if (K < 1 || K > A.cols())
        throw ConfigError("sparsity K must lie in [1, G]");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw ConfigError("noise level must be finite and nonnegative");
}

namespace detail {

Workspace prepare(const RecoveryProblem& problem)
{
    problem.validate();
    Workspace ws;
    ws.A = problem.A;
    ws.scale = RVector::Ones(problem.A.cols());
    if (!problem.normalized) {
        for (Eigen::Index g = 0; g < ws.A.cols(); ++g) {
            const double n = ws.A.col(g).norm();
            if (!(n > 0.0))
                throw ConfigError("dictionary has a zero column");
            ws.scale(g) = n;
            ws.A.col(g) /= n;
        }
    }
    return ws;
}

RecoveryResult finish(const Workspace& ws, const RecoveryProblem& problem, std::vector<int> support,
                      std::string tag)
{
    std::sort(support.begin(), support.end());
    RecoveryResult r;
    const SupportFit fit = fit_support(ws.A, support, problem.Y);
    r.xhat = scatter_rows(support, fit.coeffs, ws.A.cols());
    for (int g : support)
        r.xhat.row(g) /= ws.scale(g);
    r.residual_norm = fit.residual.norm();
    r.support = std::move(support);
    r.method_tag = std::move(tag);
    if (fit.regularized)
        r.warnings.push_back("rank-deficient support, ridge-regularized fit");
    return r;
}

}  // namespace detail

RecoveryResult beamform(const RecoveryProblem& problem)
{
    const auto ws = detail::prepare(problem);
    const RVector scores = (ws.A.adjoint() * problem.Y).rowwise().norm();
    auto r = detail::finish(ws, problem, top_k(scores, problem.K), "beamform");
    r.iterations = 1;
    return r;
}

RecoveryResult music(const RecoveryProblem& problem)
{
    const auto ws = detail::prepare(problem);
    const int MN = problem.MN();
    const int K = problem.K;
    if (MN <= K)
        throw DomainError("MUSIC needs more virtual elements than targets");
    const CMatrix R = problem.Y * problem.Y.adjoint() / static_cast<double>(problem.P());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(R);
    if (eig.info() != Eigen::Success)
        throw DomainError("MUSIC eigendecomposition failed");
    const CMatrix En = eig.eigenvectors().leftCols(MN - K);  // ascending eigenvalues
    const CMatrix proj = En.adjoint() * ws.A;
    const Eigen::Index G = ws.A.cols();
    RVector spectrum(G);
    for (Eigen::Index g = 0; g < G; ++g) {
        const double d = proj.col(g).squaredNorm();
        spectrum(g) = d > 0.0 ? 1.0 / d : std::numeric_limits<double>::max();
    }

    // plain top-K, adjacent grid points can both be targets
    std::vector<int> support = top_k(spectrum, K);

    auto r = detail::finish(ws, problem, std::move(support), "music");
    r.iterations = 1;
    if (problem.P() < K)
        r.warnings.push_back("fewer snapshots than targets: signal subspace is rank deficient");
    return r;
}

int support_error(std::vector<int> estimated, std::vector<int> truth)
{
    std::sort(estimated.begin(), estimated.end());
    std::sort(truth.begin(), truth.end());
    return estimated == truth ? 0 : 1;
}

double binomial(int G, int K)
{
    if (K < 0 || K > G)
        return 0.0;
    K = std::min(K, G - K);
    double c = 1.0;
    for (int i = 1; i <= K; ++i) {
        c = c * (G - K + i) / i;
        if (c > 1e300)
            return 1e300;
    }
    return std::round(c);
}

RecoveryResult l0_oracle(const RecoveryProblem& problem)
{
    const auto ws = detail::prepare(problem);
    const int G = problem.G();
    const int K = problem.K;
    if (binomial(G, K) > kL0MaxSubsets)
        throw DomainError("exhaustive search exceeds the subset guard");
    std::vector<int> subset(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k)
        subset[static_cast<std::size_t>(k)] = k;
    std::vector<int> best = subset;
    double best_res = std::numeric_limits<double>::infinity();
    long visited = 0;
    while (true) {
        ++visited;
        const double res = fit_support(ws.A, subset, problem.Y).residual.norm();
        if (res < best_res) {
            best_res = res;
            best = subset;
        }
        int k = K - 1;
        while (k >= 0 && subset[static_cast<std::size_t>(k)] == G - K + k)
            --k;
        if (k < 0)
            break;
        ++subset[static_cast<std::size_t>(k)];
        for (int j = k + 1; j < K; ++j)
            subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    auto r = detail::finish(ws, problem, best, "l0");
    r.iterations = static_cast<int>(visited);
    return r;
}

}  // namespace spatialcs
