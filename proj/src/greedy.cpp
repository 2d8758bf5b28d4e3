// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "recovery_internal.hpp"
#include "spatialcs/linalg.hpp"

namespace spatialcs {

namespace detail {

namespace {

constexpr double kDependentColumn = 1e-10;

}  // namespace

GreedyState::GreedyState(const CMatrix& A, const CMatrix& Y, int K)
    : A_(&A), K_(K), Q_(A.rows(), 0), R_(Y), Aperp_(A), perp_sq_(A.colwise().squaredNorm().transpose()),
      taken_(static_cast<std::size_t>(A.cols()), 0)
{
}

RVector GreedyState::scores(Score rule) const
{
    const Eigen::Index G = A_->cols();
    RVector s(G);
    if (rule == Score::omp) {
        s = (A_->adjoint() * R_).rowwise().squaredNorm();
    } else if (rule == Score::ols || R_.cols() == 1) {
        s = (Aperp_.adjoint() * R_).rowwise().squaredNorm();
        for (Eigen::Index g = 0; g < G; ++g)
            s(g) = perp_sq_(g) > kDependentColumn ? s(g) / perp_sq_(g) : -1.0;
    } else {
        const Eigen::Index cap = K_ > 0 ? std::max<Eigen::Index>(1, K_ - static_cast<Eigen::Index>(support_.size())) : -1;
        const CMatrix U = orthonormal_range(R_, 1e-10, cap);
        if (U.cols() == 0) {
            s.setZero();
        } else {
            s = (Aperp_.adjoint() * U).rowwise().squaredNorm();
        }
        for (Eigen::Index g = 0; g < G; ++g)
            s(g) = perp_sq_(g) > kDependentColumn ? s(g) / perp_sq_(g) : -1.0;
    }
    for (Eigen::Index g = 0; g < G; ++g)
        if (taken_[static_cast<std::size_t>(g)] || std::isnan(s(g)))
            s(g) = -1.0;
    return s;
}

std::vector<int> GreedyState::ranked(Score rule, int count) const
{
    const RVector s = scores(rule);
    std::vector<int> idx;
    for (Eigen::Index g = 0; g < s.size(); ++g)
        if (!taken_[static_cast<std::size_t>(g)])
            idx.push_back(static_cast<int>(g));
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return s(a) > s(b); });
    if (static_cast<int>(idx.size()) > count)
        idx.resize(static_cast<std::size_t>(count));
    return idx;
}

void GreedyState::select(int g)
{
    CVector v = Aperp_.col(g);
    if (Q_.cols() > 0)
        v -= Q_ * (Q_.adjoint() * v);
    const double n = v.norm();
    taken_[static_cast<std::size_t>(g)] = 1;
    support_.push_back(g);
    if (!(n > 1e-13))
        return;  // column already in the span; nothing new to project out
    v /= n;
    Q_.conservativeResize(Eigen::NoChange, Q_.cols() + 1);
    Q_.col(Q_.cols() - 1) = v;
    R_ -= v * (v.adjoint() * R_);
    Aperp_ -= v * (v.adjoint() * Aperp_);
    perp_sq_ = Aperp_.colwise().squaredNorm().transpose();
}

std::vector<int> greedy_path(const CMatrix& A, const CMatrix& Y, int K, Score rule, std::vector<double>* residuals)
{
    GreedyState st(A, Y, K);
    if (residuals)
        residuals->push_back(st.residual_norm());
    for (int k = 0; k < K; ++k) {
        st.select(st.ranked(rule, 1).front());
        if (residuals)
            residuals->push_back(st.residual_norm());
    }
    return st.support();
}

}  // namespace detail

namespace {

RecoveryResult run_greedy(const RecoveryProblem& problem, detail::Score rule, const char* tag)
{
    const auto ws = detail::prepare(problem);
    auto support = detail::greedy_path(ws.A, problem.Y, problem.K, rule, nullptr);
    auto r = detail::finish(ws, problem, std::move(support), tag);
    r.iterations = problem.K;
    return r;
}

}  // namespace

RecoveryResult omp(const RecoveryProblem& problem) { return run_greedy(problem, detail::Score::omp, "omp"); }

RecoveryResult ols(const RecoveryProblem& problem) { return run_greedy(problem, detail::Score::ols, "ols"); }

RecoveryResult ra_ormp(const RecoveryProblem& problem)
{
    return run_greedy(problem, detail::Score::rank_aware, "raormp");
}

RecoveryResult mbmp(const RecoveryProblem& problem, const MbmpOptions& opt)
{
    const auto ws = detail::prepare(problem);
    const int K = problem.K;
    if (static_cast<int>(opt.branches.size()) != K)
        throw ConfigError("branch vector length must equal K");
    double leaves = 1.0;
    for (int d : opt.branches) {
        if (d < 1)
            throw ConfigError("branch widths must be at least 1");
        leaves *= d;
    }
    if (leaves > opt.max_leaves)
        throw DomainError("branch vector exceeds the leaf budget");

    const auto rule = problem.P() == 1 ? detail::Score::ols : detail::Score::rank_aware;
    std::vector<detail::GreedyState> frontier;
    frontier.emplace_back(ws.A, problem.Y, K);
    int expansions = 0;
    for (int level = 0; level < K; ++level) {
        std::vector<detail::GreedyState> next;
        std::set<std::vector<int>> seen;
        for (const auto& node : frontier) {
            ++expansions;
            for (int c : node.ranked(rule, opt.branches[static_cast<std::size_t>(level)])) {
                std::vector<int> key = node.support();
                key.push_back(c);
                std::sort(key.begin(), key.end());
                if (!seen.insert(std::move(key)).second)
                    continue;
                next.push_back(node);
                next.back().select(c);
            }
        }
        frontier = std::move(next);
    }

    std::size_t best = 0;
    double best_res = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < frontier.size(); ++i) {
        const double res = frontier[i].residual_norm();
        if (res < best_res) {
            best_res = res;
            best = i;
        }
    }
    auto r = detail::finish(ws, problem, frontier[best].support(), "mbmp");
    r.iterations = expansions;
    return r;
}

}  // namespace spatialcs
