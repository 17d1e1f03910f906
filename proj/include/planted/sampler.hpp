#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "planted/graph.hpp"

namespace planted {

// A planted-model draw together with everything needed to reproduce and
// score it.
struct PlantedInstance {
    Graph graph;
    Embedding hidden;    // phi_0: V(H) -> [n]
    Graph subgraph;      // the planted H
    int n = 0;
    double q0 = 0.0;
    std::uint64_t seed = 0;
};

// Null model: every unordered pair is an edge independently with
// probability q0. Bit-exact reproducible from (n, q0, seed).
Graph er_sample(int n, double q0, std::uint64_t seed);

// Planted model: a uniformly random injective labeling phi_0 of V(H) into
// [n] (Fisher-Yates partial shuffle), edges phi_0(E(H)) forced present,
// every other pair Bernoulli(q0).
PlantedInstance plant(int n, double q0, const Graph& h, std::uint64_t seed);

// Adjacency with non-edges encoded as -p/(1-p) so off-diagonal entries are
// centered under the null at edge probability p. Diagonal fixed at zero.
class ShiftedAdjacency {
public:
    ShiftedAdjacency(Graph base, double p);

    const Graph& base() const { return base_; }
    double p() const { return p_; }
    double offdiag_value() const { return w_; }  // value on non-edges
    int rows() const { return base_.vertex_count(); }

    // y = M x without materializing M:
    //   M = (1 + p/(1-p)) A  -  p/(1-p) (J - I).
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const;

    Eigen::MatrixXd dense() const;

private:
    Graph base_;
    double p_;
    double w_;  // -p/(1-p)
};

ShiftedAdjacency shifted_adjacency(Graph g, double p);

}  // namespace planted
