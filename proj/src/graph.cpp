#include "planted/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace planted {

namespace {
constexpr int kDenseLimit = 10000;   // guard for dense matrix views
constexpr int kBitmapLimit = 20000;  // adjacency bitmap memory guard
}  // namespace

Graph::Graph(int n, std::vector<std::pair<int, int>> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("Graph: vertex count must be positive");
    for (auto& [i, j] : edges_) {
        if (i == j) throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(i));
        if (i < 1 || j < 1 || i > n_ || j > n_)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (i > j) std::swap(i, j);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw std::invalid_argument("Graph: duplicate edge");

    csr_offsets_.assign(n_ + 1, 0);
    for (const auto& [i, j] : edges_) {
        ++csr_offsets_[i];
        ++csr_offsets_[j];
    }
    for (int v = 1; v <= n_; ++v) csr_offsets_[v] += csr_offsets_[v - 1];
    csr_targets_.resize(2 * edges_.size());
    std::vector<int> cursor(csr_offsets_.begin(), csr_offsets_.end() - 1);
    for (const auto& [i, j] : edges_) {
        csr_targets_[cursor[i - 1]++] = j;
        csr_targets_[cursor[j - 1]++] = i;
    }
    for (int v = 1; v <= n_; ++v) {
        std::sort(csr_targets_.begin() + csr_offsets_[v - 1], csr_targets_.begin() + csr_offsets_[v]);
    }

    if (n_ <= kBitmapLimit) {
        bit_words_ = (n_ + 63) / 64;
        adj_bits_.assign(static_cast<std::size_t>(n_) * bit_words_, 0);
        for (const auto& [i, j] : edges_) {
            adj_bits_[static_cast<std::size_t>(i - 1) * bit_words_ + (j - 1) / 64] |= 1ULL << ((j - 1) % 64);
            adj_bits_[static_cast<std::size_t>(j - 1) * bit_words_ + (i - 1) / 64] |= 1ULL << ((i - 1) % 64);
        }
    }
}

bool Graph::has_edge(int i, int j) const {
    if (i == j) return false;
    if (!adj_bits_.empty()) {
        return (adj_bits_[static_cast<std::size_t>(i - 1) * bit_words_ + (j - 1) / 64] >> ((j - 1) % 64)) & 1ULL;
    }
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(), j);
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 1; v <= n_; ++v) d = std::max(d, degree(v));
    return d;
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
    if (n_ > kDenseLimit) throw std::invalid_argument("Graph: dense view limited to n <= 10000");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& [i, j] : edges_) {
        a(i - 1, j - 1) = 1.0;
        a(j - 1, i - 1) = 1.0;
    }
    return a;
}

Eigen::MatrixXd Graph::laplacian_matrix() const {
    Eigen::MatrixXd l = -adjacency_matrix();
    for (int v = 1; v <= n_; ++v) l(v - 1, v - 1) = degree(v);
    return l;
}

Graph Graph::induced_subgraph(const std::vector<int>& verts) const {
    std::vector<int> relabel(n_ + 1, 0);
    for (std::size_t idx = 0; idx < verts.size(); ++idx) {
        int v = verts[idx];
        if (v < 1 || v > n_) throw std::invalid_argument("induced_subgraph: vertex out of range");
        if (relabel[v] != 0) throw std::invalid_argument("induced_subgraph: repeated vertex");
        relabel[v] = static_cast<int>(idx) + 1;
    }
    std::vector<std::pair<int, int>> sub;
    for (const auto& [i, j] : edges_) {
        if (relabel[i] && relabel[j]) sub.emplace_back(relabel[i], relabel[j]);
    }
    return Graph(static_cast<int>(verts.size()), std::move(sub));
}

Graph Graph::remove_vertex(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("remove_vertex: vertex out of range");
    std::vector<int> keep;
    keep.reserve(n_ - 1);
    for (int u = 1; u <= n_; ++u)
        if (u != v) keep.push_back(u);
    return induced_subgraph(keep);
}

Graph clique(int k) {
    if (k < 2) throw std::invalid_argument("clique: k >= 2 required");
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) edges.emplace_back(i, j);
    return Graph(k, std::move(edges));
}

Graph hypercube(int m) {
    if (m < 1) throw std::invalid_argument("hypercube: m >= 1 required");
    if (m > 20) throw std::invalid_argument("hypercube: m too large");
    int n = 1 << m;
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < n; ++v) {
        for (int b = 0; b < m; ++b) {
            int u = v ^ (1 << b);
            if (v < u) edges.emplace_back(v + 1, u + 1);
        }
    }
    return Graph(n, std::move(edges));
}

Graph regular_tree(int d, int r) {
    if (d < 3) throw std::invalid_argument("regular_tree: degree >= 3 required");
    if (r < 1) throw std::invalid_argument("regular_tree: generations >= 1 required");
    // Root has d children; every other internal node has d-1 children.
    std::vector<std::pair<int, int>> edges;
    std::vector<int> frontier{1};
    int next = 2;
    for (int gen = 1; gen <= r; ++gen) {
        std::vector<int> fresh;
        int children = (gen == 1) ? d : d - 1;
        for (int parent : frontier) {
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(parent, next);
                fresh.push_back(next++);
            }
        }
        frontier = std::move(fresh);
        if (next > 2'000'000) throw std::invalid_argument("regular_tree: too many vertices");
    }
    return Graph(next - 1, std::move(edges));
}

Graph cycle_power(int k, int m) {
    if (m < 1) throw std::invalid_argument("cycle_power: m >= 1 required");
    if (2 * m >= k) throw std::invalid_argument("cycle_power: requires 2m < k");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < k; ++i) {
        for (int s = 1; s <= m; ++s) {
            int j = (i + s) % k;
            edges.emplace_back(std::min(i, j) + 1, std::max(i, j) + 1);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Graph(k, std::move(edges));
}

Graph path_graph(int k) {
    if (k < 2) throw std::invalid_argument("path_graph: k >= 2 required");
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < k; ++i) edges.emplace_back(i, i + 1);
    return Graph(k, std::move(edges));
}

Graph star_graph(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star_graph: at least one leaf");
    std::vector<std::pair<int, int>> edges;
    for (int i = 2; i <= leaves + 1; ++i) edges.emplace_back(1, i);
    return Graph(leaves + 1, std::move(edges));
}

Graph empty_graph(int n) { return Graph(n, {}); }

void validate_embedding(const Embedding& phi, int k, int n) {
    if (phi.size() != k) throw std::invalid_argument("embedding: wrong number of targets");
    std::vector<int> sorted = phi.targets;
    std::sort(sorted.begin(), sorted.end());
    if (!sorted.empty() && (sorted.front() < 1 || sorted.back() > n))
        throw std::invalid_argument("embedding: target out of range");
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("embedding: not injective");
}

}  // namespace planted
