#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "planted/graph.hpp"
#include "planted/sdp.hpp"

namespace planted {

struct CertificateOptions {
    double lin_tol = 1e-5;  // box/sum/trace feasibility threshold
    double psd_tol = 1e-8;  // min-eigenvalue tolerance
    double q0 = -1.0;       // when in [0,1): report the regime ratios
};

// The explicit feasible point for the relaxation under the null, assembled
// from the graph Laplacian/degree structure. When feasible its objective is
// a lower bound on the relaxation value, which reaches 2 e(H) by
// construction.
struct NullCertificate {
    bool case_one = false;  // lambda_k(A_H) >= (2 e(H) - k^2)/k
    double u = 0.0, a = 0.0, b = 0.0, c = 0.0;
    bool u_clipped = false;  // the positive part was active
    Eigen::MatrixXd Y;
    SdpResiduals residuals;
    double objective = 0.0;
    bool feasible = false;
    // Exact rational verification of the equality constraints, carried out
    // on the coefficient formulas (linear forms in u) before any floating
    // assembly.
    bool total_sum_exact = false;
    bool row_traces_exact = false;
    double lambda_1_h = 0.0;
    double lambda_k_h = 0.0;
    // Regime ratios (NaN unless q0 was provided): the stated condition
    // 4 lambda_1 / (sigma sqrt(n)) and the proof-form
    // 2 (lambda_1 - lambda_k) sqrt(1-q0) / sqrt(n q0); both < 1 in-regime.
    double ratio_stated = 0.0;
    double ratio_proof = 0.0;
};

NullCertificate null_certificate(const Graph& g, const Graph& h, CertificateOptions opts = {});

struct LaplacianReport {
    bool psd_ok = false;       // min eigenvalue >= -1e-9
    bool kernel_exact = false; // L 1 = 0 exactly
    double min_eigenvalue = 0.0;
    double lambda_2 = 0.0;     // second-smallest eigenvalue
    double ratio = 0.0;        // lambda_2 / (np - 2 sqrt(np(1-p)))
};

LaplacianReport laplacian_spectrum_check(const Graph& g, double p);

}  // namespace planted
