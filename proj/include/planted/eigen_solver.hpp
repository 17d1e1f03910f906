#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include <Eigen/Dense>

namespace planted {

struct EigenPair {
    double value = 0.0;
    Eigen::VectorXd vector;
    double residual = 0.0;  // ||M v - value * v||_2
    int iterations = 0;
    bool converged = false;
};

struct PowerOptions {
    double tol = 1e-8;
    int max_iter = 10000;
    std::uint64_t seed = 0;
};

// Adapter so dense matrices and implicit operators share one code path.
struct DenseOp {
    const Eigen::MatrixXd& m;
    int rows() const { return static_cast<int>(m.rows()); }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        y.noalias() = m.selfadjointView<Eigen::Lower>() * x;
    }
};

namespace detail {

Eigen::VectorXd random_start(int n, std::uint64_t seed);

// Power iteration with Rayleigh-quotient stopping for the largest algebraic
// eigenvalue. A short unshifted burn-in estimates the spectral radius; if
// the dominant magnitude could be the negative edge, iteration continues on
// M + cI so the algebraic top wins. Residual is always measured on M
// itself. Vectors in `deflate` are projected out each step (lambda_2 via
// deflation). Returns the best iterate seen, flagged if tol was not met.
template <class Op>
EigenPair power_top(const Op& op, const std::vector<Eigen::VectorXd>& deflate,
                    const Eigen::VectorXd& start, PowerOptions opts) {
    const int n = op.rows();
    EigenPair best;
    Eigen::VectorXd x = start;
    auto project = [&](Eigen::VectorXd& v) {
        for (const auto& d : deflate) v -= d.dot(v) * d;
    };
    project(x);
    double norm = x.norm();
    if (norm == 0.0) {
        // Degenerate start (fully deflated); fall back to a basis sweep.
        for (int i = 0; i < n && norm == 0.0; ++i) {
            x.setZero(n);
            x[i] = 1.0;
            project(x);
            norm = x.norm();
        }
        if (norm == 0.0) {
            best.vector = Eigen::VectorXd::Zero(n);
            best.converged = true;
            return best;
        }
    }
    x /= norm;

    Eigen::VectorXd y(n);
    double shift = 0.0;
    double radius = 0.0;
    const int burn_in = std::min(40, opts.max_iter);
    best.residual = std::numeric_limits<double>::infinity();
    best.vector = x;

    for (int it = 0; it < opts.max_iter; ++it) {
        op.apply(x, y);
        project(y);
        const double lambda = x.dot(y);
        const double res = (y - lambda * x).norm();
        radius = std::max(radius, y.norm());
        // The iterate may be tracking the magnitude-dominant negative edge;
        // a stop is only trusted once the Rayleigh quotient accounts for the
        // observed spectral radius or the shift has made the algebraic top
        // dominant.
        const bool top_dominant = shift != 0.0 || lambda >= 0.95 * radius;
        if (top_dominant && res < best.residual) {
            best.value = lambda;
            best.vector = x;
            best.residual = res;
            best.iterations = it + 1;
        }
        if (res <= opts.tol || it == burn_in - 1) {
            if (top_dominant && res <= opts.tol) {
                best.converged = true;
                break;
            }
            if (shift == 0.0 && !top_dominant) {
                shift = 1.05 * radius + 1.0;
                if (res <= opts.tol) {
                    // Already locked onto a wrong-edge eigenvector, which is
                    // a fixed point of the shifted operator as well; restart.
                    x = random_start(n, opts.seed + 0x51ec7 + static_cast<std::uint64_t>(it));
                    project(x);
                    const double xn = x.norm();
                    if (xn > 0.0) x /= xn;
                    continue;
                }
            }
        }
        if (shift != 0.0) y += shift * x;
        const double ynorm = y.norm();
        if (ynorm == 0.0) {
            // x is in the kernel and orthogonal to everything larger.
            best.value = 0.0;
            best.vector = x;
            best.residual = 0.0;
            best.converged = true;
            break;
        }
        x = y / ynorm;
    }
    if (!std::isfinite(best.residual)) {
        op.apply(x, y);
        project(y);
        best.value = x.dot(y);
        best.vector = x;
        best.residual = (y - best.value * x).norm();
    }

    // Sign convention: first component of nonnegligible magnitude positive.
    for (int i = 0; i < n; ++i) {
        if (std::abs(best.vector[i]) > 1e-12) {
            if (best.vector[i] < 0) {
                best.vector = -best.vector;
            }
            break;
        }
    }
    return best;
}

}  // namespace detail

template <class Op>
EigenPair top_eigenpair(const Op& op, PowerOptions opts = {}) {
    return detail::power_top(op, {}, detail::random_start(op.rows(), opts.seed), opts);
}

template <class Op>
EigenPair top_eigenpair_warm(const Op& op, const Eigen::VectorXd& start, PowerOptions opts = {}) {
    return detail::power_top(op, {}, start, opts);
}

EigenPair top_eigenpair(const Eigen::MatrixXd& m, PowerOptions opts = {});

// Second-largest eigenvalue by deflating the leading eigenvector.
EigenPair second_eigenpair(const Eigen::MatrixXd& m, const EigenPair& top, PowerOptions opts = {});

// Smallest eigenvalue via power iteration on cI - M with c = lambda_1 + 1.
EigenPair smallest_eigenpair(const Eigen::MatrixXd& m, const EigenPair& top, PowerOptions opts = {});

}  // namespace planted
