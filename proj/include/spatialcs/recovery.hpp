// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "spatialcs/common.hpp"
#include "spatialcs/model.hpp"

namespace spatialcs {

struct RecoveryProblem {
    CMatrix A;        // MN x G dictionary
    CMatrix Y;        // MN x P observations
    int K = 1;
    double sigma = 0.0;
    bool normalized = true;  // false: columns are rescaled internally, gains mapped back

    static RecoveryProblem from(const MeasurementMatrix& A, const SnapshotData& data, int K);

    int MN() const { return static_cast<int>(A.rows()); }
    int G() const { return static_cast<int>(A.cols()); }
    int P() const { return static_cast<int>(Y.cols()); }

    /// Throws ConfigError on inconsistent dimensions or K outside [1, G].
    void validate() const;
};

struct RecoveryResult {
    std::vector<int> support;  // sorted, 0-based
    CMatrix xhat;              // G x P, zero off the support
    double residual_norm = 0.0;
    int iterations = 0;
    std::string method_tag;
    bool converged = true;
    std::vector<std::string> warnings;
};

/// K largest ||a_g^H Y||, least-squares gains.
RecoveryResult beamform(const RecoveryProblem& problem);

/// Greedy pursuits. Selection scores use the residual R after projecting out
/// the chosen columns: OMP ||a_g^H R||^2, OLS ||a~_g^H R||^2 / ||a~_g||^2 with
/// a~_g the projected column. Equal scores resolve to the lower index.
RecoveryResult omp(const RecoveryProblem& problem);
RecoveryResult ols(const RecoveryProblem& problem);

/// Rank-aware order-recursive pursuit: OLS-style normalization of the
/// correlation with an orthonormal basis of the residual span. P = 1 is OLS.
RecoveryResult ra_ormp(const RecoveryProblem& problem);

struct CosampOptions {
    int max_iter = 50;
    double tol = 1e-6;
};
RecoveryResult cosamp(const RecoveryProblem& problem, const CosampOptions& opt = {});

struct FocussOptions {
    double p_norm = 0.8;
    int max_iter = 100;
    double tol = 1e-6;
    double lambda = -1.0;  // negative: sigma^2 floored at kFocussMinLambda
};
inline constexpr double kFocussMinLambda = 1e-10;
RecoveryResult focuss(const RecoveryProblem& problem, const FocussOptions& opt = {});

struct LassoOptions {
    double radius_scale = 1.0;  // radius = radius_scale * sigma * sqrt(MN * P)
    int max_sweeps = 20000;
    int max_lambda_steps = 200;
    double feasibility_tol = 1e-6;
};
/// Group l1 minimization subject to ||Y - A X||_F <= radius. xhat keeps the K
/// largest rows of the solution without debiasing.
RecoveryResult lasso_bpdn(const RecoveryProblem& problem, const LassoOptions& opt = {});

/// Pseudo-spectrum 1 / ||E_n^H a_g||^2 from the sample covariance; the K
/// largest grid values win.
RecoveryResult music(const RecoveryProblem& problem);

struct MbmpOptions {
    std::vector<int> branches;  // one width per level, length K
    double max_leaves = 1e5;
};
/// Tree search: each node at level i spawns its branches[i] best candidates
/// under the OLS (P = 1) or rank-aware (P > 1) score; the leaf with the
/// smallest residual wins, earliest leaf on ties.
RecoveryResult mbmp(const RecoveryProblem& problem, const MbmpOptions& opt);

inline constexpr double kL0MaxSubsets = 1e6;
/// Exhaustive search over all K-subsets for the minimum least-squares residual.
RecoveryResult l0_oracle(const RecoveryProblem& problem);

/// 1 when the index sets differ (order-insensitive), else 0.
int support_error(std::vector<int> estimated, std::vector<int> truth);

/// Number of K-subsets of G, saturating at a large value.
double binomial(int G, int K);

}  // namespace spatialcs
