// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "spatialcs/common.hpp"

namespace spatialcs {

inline constexpr double kRidge = 1e-12;

struct SupportFit {
    CMatrix coeffs;    // |S| x P
    CMatrix residual;  // Y - A_S coeffs
    bool regularized = false;
};

/// Least squares of Y on the columns S of A. Rank-deficient column sets fall
/// back to ridge-regularized normal equations with weight kRidge.
SupportFit fit_support(const CMatrix& A, const std::vector<int>& S, const CMatrix& Y);

/// Gathers the columns S of A.
CMatrix columns(const CMatrix& A, const std::vector<int>& S);

/// Orthonormal basis of range(X) from singular vectors above rel_tol * s_max.
CMatrix orthonormal_range(const CMatrix& X, double rel_tol = 1e-10, Eigen::Index max_rank = -1);

/// Row l2 norms.
RVector row_norms(const CMatrix& X);

/// Indices of the k largest values; equal values resolve to the lower index.
/// Result is sorted ascending.
std::vector<int> top_k(const RVector& scores, int k);

/// Scatters support rows into a G x P matrix.
CMatrix scatter_rows(const std::vector<int>& S, const CMatrix& rows, Eigen::Index G);

}  // namespace spatialcs
