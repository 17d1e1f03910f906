#include "planted/sdp.hpp"

#include <algorithm>
#include <stdexcept>

namespace planted {

namespace {
inline Eigen::Index row_of(int j, int i, int k) {
    return static_cast<Eigen::Index>(j - 1) * k + (i - 1);
}
}  // namespace

void add_kron_adjacency(Eigen::MatrixXd& m, const Graph& g, const Graph& h, double scale) {
    const int k = h.vertex_count();
    for (const auto& [a, b] : g.edges()) {
        for (const auto& [p, q] : h.edges()) {
            m(row_of(a, p, k), row_of(b, q, k)) += scale;
            m(row_of(a, q, k), row_of(b, p, k)) += scale;
            m(row_of(b, p, k), row_of(a, q, k)) += scale;
            m(row_of(b, q, k), row_of(a, p, k)) += scale;
        }
    }
}

double kron_adjacency_objective(const Graph& g, const Graph& h, const Eigen::MatrixXd& y) {
    const int k = h.vertex_count();
    double total = 0.0;
    for (const auto& [a, b] : g.edges()) {
        for (const auto& [p, q] : h.edges()) {
            total += y(row_of(b, q, k), row_of(a, p, k));
            total += y(row_of(b, p, k), row_of(a, q, k));
            total += y(row_of(a, q, k), row_of(b, p, k));
            total += y(row_of(a, p, k), row_of(b, q, k));
        }
    }
    return total;
}

SdpResiduals constraint_residuals(const Eigen::MatrixXd& y, int n, int k) {
    SdpResiduals r;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y, Eigen::EigenvaluesOnly);
    r.psd = std::max(0.0, -es.eigenvalues().minCoeff());
    r.box = std::max(std::max(0.0, -y.minCoeff()), std::max(0.0, y.maxCoeff() - 1.0));
    r.total_sum = std::abs(y.sum() - static_cast<double>(k) * k);
    for (int i = 1; i <= k; ++i) {
        double trace = 0.0;
        for (int j = 1; j <= n; ++j) trace += y(row_of(j, i, k), row_of(j, i, k));
        r.row_traces = std::max(r.row_traces, std::abs(trace - 1.0));
    }
    for (int j = 1; j <= n; ++j) {
        double trace = 0.0;
        for (int i = 1; i <= k; ++i) trace += y(row_of(j, i, k), row_of(j, i, k));
        r.col_traces = std::max(r.col_traces, std::max(0.0, trace - 1.0));
    }
    return r;
}

namespace {

// Projection onto the affine subspace {<J,Y> = k^2, row-trace groups = 1}.
// The Gram system of the two constraint families has closed form.
void project_equalities(Eigen::MatrixXd& y, int n, int k) {
    const double nk = static_cast<double>(n) * k;
    const double total_violation = y.sum() - static_cast<double>(k) * k;
    Eigen::VectorXd group(k);
    for (int i = 1; i <= k; ++i) {
        double trace = 0.0;
        for (int j = 1; j <= n; ++j) trace += y(row_of(j, i, k), row_of(j, i, k));
        group[i - 1] = trace - 1.0;
    }
    const double beta0 = (total_violation - group.sum()) / (nk * nk - nk);
    y.array() -= beta0;
    for (int i = 1; i <= k; ++i) {
        const double beta_i = group[i - 1] / n - beta0;
        for (int j = 1; j <= n; ++j) y(row_of(j, i, k), row_of(j, i, k)) -= beta_i;
    }
}

// Per-block diagonal halfspaces {sum_i Y[(j,i),(j,i)] <= 1}; supports are
// disjoint across j.
void project_col_halfspaces(Eigen::MatrixXd& y, int n, int k) {
    for (int j = 1; j <= n; ++j) {
        double trace = 0.0;
        for (int i = 1; i <= k; ++i) trace += y(row_of(j, i, k), row_of(j, i, k));
        if (trace > 1.0) {
            const double shift = (trace - 1.0) / k;
            for (int i = 1; i <= k; ++i) y(row_of(j, i, k), row_of(j, i, k)) -= shift;
        }
    }
}

// Dykstra projection onto box -> equalities -> halfspaces.
Eigen::MatrixXd project_box_affine(const Eigen::MatrixXd& w, int n, int k, int cycles) {
    Eigen::MatrixXd x = w;
    Eigen::MatrixXd p_box = Eigen::MatrixXd::Zero(w.rows(), w.cols());
    Eigen::MatrixXd p_half = Eigen::MatrixXd::Zero(w.rows(), w.cols());
    // Affine subspaces need no Dykstra correction term.
    for (int c = 0; c < cycles; ++c) {
        Eigen::MatrixXd t = x + p_box;
        x = t.cwiseMax(0.0).cwiseMin(1.0);
        p_box = t - x;

        project_equalities(x, n, k);

        t = x + p_half;
        x = t;
        project_col_halfspaces(x, n, k);
        p_half = t - x;
    }
    return x;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& w) {
    Eigen::MatrixXd sym = 0.5 * (w + w.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

SdpSolution sdp_solve(const Graph& g, const Graph& h, SdpParams params) {
    const int n = g.vertex_count();
    const int k = h.vertex_count();
    const Eigen::Index dim = static_cast<Eigen::Index>(n) * k;
    if (dim > 2000) throw std::invalid_argument("sdp_solve: nk <= 2000 required");

    double rho = params.rho;
    Eigen::MatrixXd z = project_box_affine(Eigen::MatrixXd::Zero(dim, dim), n, k,
                                           params.dykstra_cycles);
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd x(dim, dim), z_prev(dim, dim), w(dim, dim);

    SdpSolution sol;
    int it = 0;
    for (; it < params.max_iter; ++it) {
        w = z - u;
        add_kron_adjacency(w, g, h, 1.0 / rho);
        x = project_psd(w);

        z_prev = z;
        z = project_box_affine(x + u, n, k, params.dykstra_cycles);
        u += x - z;

        const double primal = (x - z).norm();
        const double dual = rho * (z - z_prev).norm();
        if (primal <= params.tol && dual <= params.tol) {
            sol.converged = true;
            ++it;
            break;
        }
        if ((it + 1) % 20 == 0) {
            if (primal > 10.0 * dual) {
                rho *= 2.0;
                u *= 0.5;
            } else if (dual > 10.0 * primal) {
                rho *= 0.5;
                u *= 2.0;
            }
        }
    }

    sol.iterations = it;
    sol.Y = project_box_affine(z, n, k, 10 * params.dykstra_cycles);
    sol.objective = kron_adjacency_objective(g, h, sol.Y);
    sol.residuals = constraint_residuals(sol.Y, n, k);
    return sol;
}

TestOutcome sdp_test(const Graph& g, const Graph& h, SdpParams params) {
    SdpSolution sol = sdp_solve(g, h, params);
    const double target = 2.0 * static_cast<double>(h.edge_count());
    const double slack = params.slack_frac * target;
    TestOutcome out;
    out.test_name = "sdp";
    out.statistic = sol.objective;
    out.threshold = target - slack;
    out.decision = sol.objective >= out.threshold;
    out.reliable = sol.converged;
    out.info["slack"] = slack;
    out.info["iterations"] = sol.iterations;
    out.info["psd_residual"] = sol.residuals.psd;
    out.info["box_residual"] = sol.residuals.box;
    return out;
}

}  // namespace planted
