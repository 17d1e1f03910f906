#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace planted {

// Simple undirected graph on vertices 1..n. Edges are stored as a sorted
// list of pairs (i,j), i<j, with a CSR neighbor view built at construction.
// Immutable after construction; cheap to copy and safe to share.
class Graph {
public:
    Graph() = default;
    Graph(int n, std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return n_; }
    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_edge(int i, int j) const;
    int degree(int v) const { return csr_offsets_[v] - csr_offsets_[v - 1]; }
    int max_degree() const;
    std::span<const int> neighbors(int v) const {
        return {csr_targets_.data() + csr_offsets_[v - 1],
                csr_targets_.data() + csr_offsets_[v]};
    }

    // Dense 0/1 adjacency, zero diagonal. Guarded at n <= 10^4.
    Eigen::MatrixXd adjacency_matrix() const;
    // D - A with integer-valued entries.
    Eigen::MatrixXd laplacian_matrix() const;

    // Induced subgraph on the given vertices, relabeled 1..|verts| in the
    // given order.
    Graph induced_subgraph(const std::vector<int>& verts) const;
    // Graph with vertex v removed, remaining vertices relabeled 1..n-1 in
    // increasing original order.
    Graph remove_vertex(int v) const;

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> csr_offsets_;  // size n+1, csr_offsets_[0] unused sentinel 0
    std::vector<int> csr_targets_;
    std::vector<std::uint64_t> adj_bits_;  // row-major bitmap when n is small enough
    int bit_words_ = 0;
};

// Deterministic families.
Graph clique(int k);                 // K_k, k >= 2
Graph hypercube(int m);              // 2^m vertices, m-regular
Graph regular_tree(int d, int r);    // degree d >= 3, r >= 1 generations
Graph cycle_power(int k, int m);     // m-th power of C_k, requires 2m < k
Graph path_graph(int k);             // path on k vertices
Graph star_graph(int leaves);        // one center joined to `leaves` vertices
Graph empty_graph(int n);

// Injective labeling of a small graph's vertices into [n]:
// targets[i-1] is the image of vertex i.
struct Embedding {
    std::vector<int> targets;
    int size() const { return static_cast<int>(targets.size()); }
};

// Throws std::invalid_argument unless phi is injective into [n] with
// exactly k = v(H) entries.
void validate_embedding(const Embedding& phi, int k, int n);

}  // namespace planted
