// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace spatialcs {

CMatrix columns(const CMatrix& A, const std::vector<int>& S)
{
    CMatrix out(A.rows(), static_cast<Eigen::Index>(S.size()));
    for (std::size_t k = 0; k < S.size(); ++k)
        out.col(static_cast<Eigen::Index>(k)) = A.col(S[k]);
    return out;
}

SupportFit fit_support(const CMatrix& A, const std::vector<int>& S, const CMatrix& Y)
{
    SupportFit fit;
    if (S.empty()) {
        fit.coeffs.resize(0, Y.cols());
        fit.residual = Y;
        return fit;
    }
    const CMatrix As = columns(A, S);
    Eigen::ColPivHouseholderQR<CMatrix> qr(As);
    qr.setThreshold(1e-12);
    if (qr.rank() == As.cols()) {
        fit.coeffs = qr.solve(Y);
    } else {
        CMatrix normal = As.adjoint() * As;
        normal.diagonal().array() += kRidge;
        fit.coeffs = normal.ldlt().solve(As.adjoint() * Y);
        fit.regularized = true;
    }
    fit.residual = Y - As * fit.coeffs;
    return fit;
}

CMatrix orthonormal_range(const CMatrix& X, double rel_tol, Eigen::Index max_rank)
{
    if (X.size() == 0)
        return CMatrix(X.rows(), 0);
    Eigen::JacobiSVD<CMatrix> svd(X, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || !(s(0) > 0.0))
        return CMatrix(X.rows(), 0);
    Eigen::Index r = 0;
    while (r < s.size() && s(r) > rel_tol * s(0) && (max_rank < 0 || r < max_rank))
        ++r;
    return svd.matrixU().leftCols(r);
}

RVector row_norms(const CMatrix& X) { return X.rowwise().norm(); }

std::vector<int> top_k(const RVector& scores, int k)
{
    const auto n = static_cast<int>(scores.size());
    k = std::clamp(k, 0, n);
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    const auto key = [&](int i) {
        const double v = scores(i);
        return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
    };
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key(a) > key(b); });
    idx.resize(static_cast<std::size_t>(k));
    std::sort(idx.begin(), idx.end());
    return idx;
}

CMatrix scatter_rows(const std::vector<int>& S, const CMatrix& rows, Eigen::Index G)
{
    CMatrix X = CMatrix::Zero(G, rows.cols());
    for (std::size_t k = 0; k < S.size(); ++k)
        X.row(S[k]) = rows.row(static_cast<Eigen::Index>(k));
    return X;
}

}  // namespace spatialcs
