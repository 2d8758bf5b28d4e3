// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "spatialcs/recovery.hpp"

namespace spatialcs::detail {

struct Workspace {
    CMatrix A;      // unit-norm columns
    RVector scale;  // original column norms
};

Workspace prepare(const RecoveryProblem& problem);

/// Least-squares gains on the support, mapped back to the caller's column scaling.
RecoveryResult finish(const Workspace& ws, const RecoveryProblem& problem, std::vector<int> support,
                      std::string tag);

enum class Score { omp, ols, rank_aware };

/// Incremental orthogonal-projection state shared by the greedy pursuits.
class GreedyState {
public:
    /// `K` caps the rank-aware residual basis at K - |support| directions
    /// (the remaining signal subspace); K <= 0 keeps the full numerical range.
    GreedyState(const CMatrix& A, const CMatrix& Y, int K = 0);

    /// Score per column; selected or numerically dependent columns score -1.
    RVector scores(Score rule) const;
    /// Candidates ordered by decreasing score, lower index first on ties,
    /// excluding selected columns.
    std::vector<int> ranked(Score rule, int count) const;
    void select(int g);

    const std::vector<int>& support() const { return support_; }
    double residual_norm() const { return R_.norm(); }

private:
    const CMatrix* A_;
    int K_;
    CMatrix Q_;       // orthonormal basis of selected columns
    CMatrix R_;       // residual
    CMatrix Aperp_;   // columns projected off span(Q)
    RVector perp_sq_;
    std::vector<int> support_;
    std::vector<char> taken_;
};

/// Runs K greedy selections with one scoring rule.
std::vector<int> greedy_path(const CMatrix& A, const CMatrix& Y, int K, Score rule, std::vector<double>* residuals);

}  // namespace spatialcs::detail
