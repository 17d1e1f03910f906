#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "planted/graph.hpp"

namespace planted {

// Tr(A_H Pi^T A_G Pi) = 2 sum over H-edges of A_G(phi(i), phi(j)).
// Always an even integer in [0, 2 e(H)].
std::int64_t qap_objective(const Graph& g, const Graph& h, const Embedding& phi);

struct QapOptions {
    std::uint64_t node_budget = 100'000'000;
};

struct QapResult {
    std::int64_t opt = 0;
    Embedding argmax;
    std::uint64_t nodes_visited = 0;
    bool budget_exceeded = false;
};

// Exact maximum of the assignment objective over all injective labelings,
// by branch and bound on partial objectives.
QapResult qap_brute_force(const Graph& g, const Graph& h, QapOptions opts = {});

// Rank-one 0/1 lift Y = vec(Pi) vec(Pi)^T of an assignment, with the index
// convention row(j, i) = (j-1)k + i for G-vertex j and H-vertex i.
Eigen::MatrixXd lift_assignment(const Embedding& phi, int n, int k);

}  // namespace planted
