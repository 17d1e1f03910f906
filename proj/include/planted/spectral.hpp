#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "planted/eigen_solver.hpp"
#include "planted/graph.hpp"
#include "planted/sampler.hpp"
#include "planted/test_outcome.hpp"

namespace planted {

// sigma(q0) = sqrt(q0/(1-q0)): the entrywise standard deviation of the
// centered null adjacency.
double sigma(double q0);

// Rejects the null iff lambda_1 of the shifted adjacency exceeds
// 2.1 sigma(q0) sqrt(n). Needs no knowledge of the planted subgraph.
TestOutcome spectral_test(const Graph& g, double q0, PowerOptions opts = {});

struct IdentifyOptions {
    double tol = 1e-8;
    int max_iter = 10000;
    std::uint64_t eigen_seed = 0;
    std::optional<double> refine_eps;  // run the low-degree second stage when set
};

struct VertexScore {
    int vertex = 0;
    double score = 0.0;              // d^(i): edges from i into the candidate set
    std::vector<int> candidate_set;  // S_i: k largest-magnitude coordinates
    bool eigen_converged = true;
};

struct IdentificationResult {
    std::vector<int> selected;
    double threshold = 0.0;  // t = k q0 + 3 sqrt(k q0 log k), natural log
    std::vector<VertexScore> per_vertex;
    std::vector<int> refined;  // empty unless refine_eps was given
    std::vector<int> skipped;  // vertices whose eigensolve failed to converge
};

// For each vertex i: leading eigenvector of the shifted adjacency with row
// and column i removed, candidate set from its k largest-magnitude
// coordinates (ties by ascending vertex index), selection by edge count
// against t. Per-vertex solves are warm-started from the full-graph leading
// eigenvector and run as an independent parallel map.
IdentificationResult identify(const Graph& g, double q0, int k, IdentifyOptions opts = {});

// { i in V(G) : deg_S(i) > (1+eps) q0 |S| }.
std::vector<int> refine_low_degree(const Graph& g, const std::vector<int>& s, double q0,
                                   double eps);

// { i in V(H) : deg(i) > c sqrt(v(H) log v(H)) }, natural log.
std::vector<int> significant_set(const Graph& h, double c);

// Spectral-expansion and eigenvector-spread certificate for H and all its
// single-vertex deletions.
struct BalanceCertificate {
    double epsilon = 0.0;        // 1 - max(lambda_2, -lambda_n)/lambda_1
    double mu = 0.0;             // sqrt(v(H)) * min_i |v_i|
    double strict_epsilon = 0.0; // min over deletions H\i
    double strict_mu = 0.0;
    double lambda_minus = 0.0;   // min_i lambda_1(A_{H\i})
    double lambda_1 = 0.0;
    double lambda_2 = 0.0;
    double lambda_n = 0.0;
};

BalanceCertificate balance_certificate(const Graph& h, PowerOptions opts = {1e-10, 20000, 0});

// Finite-n evaluation of the sufficient condition for identify() to
// succeed, plus the derived constants alpha and c for the significance
// threshold.
struct IdentificationGuarantee {
    bool ok = false;
    bool ratio_ok = false;          // |lambda_-|/sqrt(n) > 3 sigma / (eps delta)
    bool alpha_ok = false;          // alpha = 2 delta / (mu^2 (1-delta)) < 1
    double lambda_minus_ratio = 0.0;
    double required_ratio = 0.0;
    double alpha = 0.0;
    double c = 0.0;                 // 4 / ((1-alpha)(1-q0))
    BalanceCertificate certificate;
};

IdentificationGuarantee identification_guarantee(const Graph& h, std::int64_t n, double q0,
                                                 double delta,
                                                 PowerOptions opts = {1e-10, 20000, 0});

}  // namespace planted
