#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "planted/graph.hpp"
#include "planted/test_outcome.hpp"

namespace planted {

struct SdpParams {
    double tol = 1e-5;        // primal/dual Frobenius residual target
    int max_iter = 20000;
    double rho = 1.0;         // penalty parameter, residual-balanced x2 / /2
    int dykstra_cycles = 60;  // inner box/affine projection cycles
    double slack_frac = 1e-3; // sdp_test slack as a fraction of 2 e(H)
};

struct SdpResiduals {
    double psd = 0.0;         // max(0, -lambda_min(Y))
    double box = 0.0;         // worst violation of 0 <= Y <= 1
    double total_sum = 0.0;   // |<J,Y> - k^2|
    double row_traces = 0.0;  // max_i |sum_l Y[(l,i),(l,i)] - 1|
    double col_traces = 0.0;  // max_j max(0, sum_i Y[(j,i),(j,i)] - 1)
};

struct SdpSolution {
    Eigen::MatrixXd Y;
    double objective = 0.0;   // <A_G (x) A_H, Y>
    SdpResiduals residuals;
    int iterations = 0;
    bool converged = false;
};

// Adds scale * (A_G (x) A_H) to a dense nk x nk matrix without forming the
// Kronecker product. Index convention: row(j,i) = (j-1)k + i.
void add_kron_adjacency(Eigen::MatrixXd& m, const Graph& g, const Graph& h, double scale);

// <A_G (x) A_H, Y>, evaluated edge-by-edge.
double kron_adjacency_objective(const Graph& g, const Graph& h, const Eigen::MatrixXd& y);

// All constraint residuals of the relaxation at Y (PSD residual via a full
// eigendecomposition).
SdpResiduals constraint_residuals(const Eigen::MatrixXd& y, int n, int k);

// Operator-splitting solve of the relaxation: alternate the PSD-cone
// projection (full eigendecomposition) with the box/affine projection
// (Dykstra cycles over box, equality subspace, and column-trace
// halfspaces), with scaled dual updates. Deterministic given params.
SdpSolution sdp_solve(const Graph& g, const Graph& h, SdpParams params = {});

// Rejects the null iff the relaxation value reaches 2 e(H) - slack.
TestOutcome sdp_test(const Graph& g, const Graph& h, SdpParams params = {});

}  // namespace planted
