// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>

#include "recovery_internal.hpp"
#include "spatialcs/linalg.hpp"

namespace spatialcs {

RecoveryResult cosamp(const RecoveryProblem& problem, const CosampOptions& opt)
{
    const auto ws = detail::prepare(problem);
    const int K = problem.K;
    if (opt.max_iter < 1)
        throw ConfigError("CoSaMP needs max_iter >= 1");
    if (2 * K > problem.MN())
        throw DomainError("CoSaMP needs 2K <= MN");

    const double y_norm = problem.Y.norm();
    std::vector<int> support;
    std::vector<int> best;
    double best_res = std::numeric_limits<double>::infinity();
    double prev_res = y_norm;
    CMatrix R = problem.Y;
    bool converged = false;
    int it = 0;
    while (it < opt.max_iter) {
        ++it;
        const auto omega = top_k((ws.A.adjoint() * R).rowwise().norm(), 2 * K);
        std::vector<int> merged = omega;
        merged.insert(merged.end(), support.begin(), support.end());
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

        const SupportFit fit = fit_support(ws.A, merged, problem.Y);
        const auto keep = top_k(row_norms(fit.coeffs), K);
        support.clear();
        CMatrix kept(K, problem.P());
        for (int k = 0; k < K; ++k) {
            const int local = keep[static_cast<std::size_t>(k)];
            support.push_back(merged[static_cast<std::size_t>(local)]);
            kept.row(k) = fit.coeffs.row(local);
        }
        R = problem.Y - columns(ws.A, support) * kept;
        const double res = R.norm();
        if (res < best_res) {
            best_res = res;
            best = support;
        }
        if (res <= 1e-12 * y_norm || std::abs(prev_res - res) < opt.tol * prev_res) {
            converged = true;
            break;
        }
        prev_res = res;
    }
    auto r = detail::finish(ws, problem, best, "cosamp");
    r.iterations = it;
    r.converged = converged;
    if (!converged)
        r.warnings.push_back("iteration cap reached; returning best iterate");
    return r;
}

RecoveryResult focuss(const RecoveryProblem& problem, const FocussOptions& opt)
{
    const auto ws = detail::prepare(problem);
    if (!(opt.p_norm > 0.0 && opt.p_norm <= 1.0))
        throw ConfigError("FOCUSS p_norm must lie in (0, 1]");
    if (opt.max_iter < 1)
        throw ConfigError("FOCUSS needs max_iter >= 1");
    const double lambda = opt.lambda >= 0.0 ? std::max(opt.lambda, kFocussMinLambda)
                                            : std::max(problem.sigma * problem.sigma, kFocussMinLambda);
    const Eigen::Index G = ws.A.cols();
    const double exponent = 1.0 - 0.5 * opt.p_norm;

    RVector w = RVector::Ones(G);
    CMatrix X;
    bool converged = false;
    double change = std::numeric_limits<double>::infinity();
    int it = 0;
    while (it < opt.max_iter) {
        ++it;
        const CMatrix Aw = ws.A * w.asDiagonal();
        CMatrix B = Aw * Aw.adjoint();
        B.diagonal().array() += lambda;
        const CMatrix Xn = w.asDiagonal() * (Aw.adjoint() * B.ldlt().solve(problem.Y));
        if (!Xn.allFinite()) {
            std::ostringstream msg;
            msg << "FOCUSS diverged at iteration " << it << " (last relative change " << change << ")";
            throw DomainError(msg.str());
        }
        if (X.size() > 0) {
            const double base = std::max(X.norm(), std::numeric_limits<double>::min());
            change = (Xn - X).norm() / base;
        }
        X = Xn;
        if (change < opt.tol) {
            converged = true;
            break;
        }
        w = row_norms(X).array().pow(exponent).matrix();
    }
    auto r = detail::finish(ws, problem, top_k(row_norms(X), problem.K), "focuss");
    r.iterations = it;
    r.converged = converged;
    if (!converged)
        r.warnings.push_back("iteration cap reached");
    return r;
}

namespace {

// Group coordinate descent for 0.5 ||Y - A X||^2 + lambda sum_g ||X_g||, unit-norm columns.
class GroupLasso {
public:
    GroupLasso(const CMatrix& A, const CMatrix& Y) : A_(A), Y_(Y), X_(CMatrix::Zero(A.cols(), Y.cols())), R_(Y) {}

    int solve(double lambda, int max_sweeps, double tol)
    {
        int sweeps = 0;
        while (sweeps < max_sweeps) {
            ++sweeps;
            double delta = sweep(lambda, false);
            if (delta <= tol)
                break;
            while (sweeps < max_sweeps) {
                ++sweeps;
                delta = sweep(lambda, true);
                if (delta <= tol)
                    break;
            }
        }
        // Refresh the residual to shed accumulated rounding.
        R_ = Y_ - A_ * X_;
        return sweeps;
    }

    double residual_norm() const { return R_.norm(); }
    const CMatrix& X() const { return X_; }

    /// Largest KKT violation relative to lambda.
    double kkt_violation(double lambda) const
    {
        const CMatrix C = A_.adjoint() * R_;
        double worst = 0.0;
        for (Eigen::Index g = 0; g < X_.rows(); ++g) {
            const double xn = X_.row(g).norm();
            double v;
            if (xn > 0.0)
                v = (C.row(g) - lambda * X_.row(g) / xn).norm();
            else
                v = std::max(0.0, C.row(g).norm() - lambda);
            worst = std::max(worst, v / lambda);
        }
        return worst;
    }

    struct Snapshot {
        CMatrix X, R;
    };
    Snapshot save() const { return {X_, R_}; }
    void restore(const Snapshot& s)
    {
        X_ = s.X;
        R_ = s.R;
    }

private:
    double sweep(double lambda, bool active_only)
    {
        double delta = 0.0;
        for (Eigen::Index g = 0; g < A_.cols(); ++g) {
            if (active_only && X_.row(g).squaredNorm() == 0.0)
                continue;
            const Eigen::RowVectorXcd r = A_.col(g).adjoint() * R_ + X_.row(g);
            const double n = r.norm();
            Eigen::RowVectorXcd next = Eigen::RowVectorXcd::Zero(r.size());
            if (n > lambda)
                next = (1.0 - lambda / n) * r;
            const Eigen::RowVectorXcd d = next - X_.row(g);
            const double dn = d.norm();
            if (dn > 0.0) {
                R_.noalias() -= A_.col(g) * d;
                X_.row(g) = next;
                delta = std::max(delta, dn);
            }
        }
        return delta;
    }

    const CMatrix& A_;
    const CMatrix& Y_;
    CMatrix X_;
    CMatrix R_;
};

}  // namespace

RecoveryResult lasso_bpdn(const RecoveryProblem& problem, const LassoOptions& opt)
{
    const auto ws = detail::prepare(problem);
    if (!(opt.radius_scale >= 0.0))
        throw ConfigError("LASSO radius scale must be nonnegative");
    const double y_norm = problem.Y.norm();
    const double radius = opt.radius_scale * problem.sigma * std::sqrt(static_cast<double>(problem.MN()) * problem.P());
    // A zero radius asks for an exact fit; aim just inside it instead.
    const double target = radius > 0.0 ? radius : 0.5 * opt.feasibility_tol * y_norm;
    const double band = opt.feasibility_tol * (radius > 0.0 ? radius : y_norm);
    const Eigen::Index G = ws.A.cols();

    RecoveryResult r;
    r.method_tag = "lasso";
    if (y_norm <= radius || y_norm == 0.0) {
        r.support = top_k(RVector::Zero(G), problem.K);
        r.xhat = CMatrix::Zero(G, problem.P());
        r.residual_norm = y_norm;
        r.iterations = 0;
        return r;
    }

    const double lambda_max = (ws.A.adjoint() * problem.Y).rowwise().norm().maxCoeff();
    const double cd_tol = 1e-13 * y_norm;
    GroupLasso solver(ws.A, problem.Y);
    int sweeps = 0;

    // Continuation down from lambda_max until the residual enters the ball.
    double lam_hi = lambda_max;  // residual above target
    double res_hi = y_norm;
    double lam_lo = 0.0;
    double res_lo = 0.0;
    GroupLasso::Snapshot lo_state;
    bool found_lo = false;
    double lam = lambda_max;
    int steps = 0;
    while (steps < opt.max_lambda_steps) {
        ++steps;
        lam *= 0.5;
        sweeps += solver.solve(lam, opt.max_sweeps, cd_tol);
        const double res = solver.residual_norm();
        if (res <= target + band) {
            lam_lo = lam;
            res_lo = res;
            lo_state = solver.save();
            found_lo = true;
            break;
        }
        lam_hi = lam;
        res_hi = res;
        if (lam < 1e-15 * lambda_max)
            break;
    }

    bool converged = false;
    if (found_lo) {
        // Illinois regula falsi on log(lambda); the residual grows with lambda.
        double a = std::log(lam_lo), fa = res_lo - target;
        double b = std::log(lam_hi), fb = res_hi - target;
        int side = 0;
        converged = std::abs(fa) <= band;
        while (!converged && steps < opt.max_lambda_steps) {
            ++steps;
            double c = (a * fb - b * fa) / (fb - fa);
            if (!(c > std::min(a, b) && c < std::max(a, b)))
                c = 0.5 * (a + b);
            solver.restore(lo_state);
            sweeps += solver.solve(std::exp(c), opt.max_sweeps, cd_tol);
            const double fc = solver.residual_norm() - target;
            if (fc <= band) {
                lam_lo = std::exp(c);
                lo_state = solver.save();
                converged = std::abs(fc) <= band;
                a = c;
                fa = fc;
                if (side == -1)
                    fb *= 0.5;
                side = -1;
            } else {
                b = c;
                fb = fc;
                if (side == 1)
                    fa *= 0.5;
                side = 1;
            }
            if (std::abs(b - a) < 1e-15)
                break;
        }
        solver.restore(lo_state);
    }

    const CMatrix& X = solver.X();
    r.support = top_k(row_norms(X), problem.K);
    r.xhat = CMatrix::Zero(G, problem.P());
    for (int g : r.support)
        r.xhat.row(g) = X.row(g) / ws.scale(g);
    r.residual_norm = solver.residual_norm();
    r.iterations = sweeps;
    r.converged = converged;
    if (!found_lo)
        r.warnings.push_back("residual ball not reached; returning smallest-residual iterate");
    else if (!converged)
        r.warnings.push_back("radius not matched within tolerance; returning feasible iterate");
    const double kkt = found_lo ? solver.kkt_violation(lam_lo) : 0.0;
    if (kkt > 1e-4)
        r.warnings.push_back("optimality residual " + std::to_string(kkt));
    return r;
}

}  // namespace spatialcs
