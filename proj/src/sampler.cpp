#include "planted/sampler.hpp"

#include <numeric>
#include <stdexcept>

#include "planted/rng.hpp"

namespace planted {

namespace {
// Stream ids within one sampler seed. Stream 0 draws pair indicators in
// colex pair order, stream 1 draws the hidden labeling.
constexpr std::uint64_t kPairStream = 0;
constexpr std::uint64_t kLabelStream = 1;

// Colex index of pair (i,j), 1 <= i < j: pairs of j=2 first, then j=3, ...
inline std::uint64_t pair_index(int i, int j) {
    return static_cast<std::uint64_t>(j - 1) * (j - 2) / 2 + (i - 1);
}
}  // namespace

Graph er_sample(int n, double q0, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("er_sample: n >= 1 required");
    if (q0 < 0.0 || q0 > 1.0) throw std::invalid_argument("er_sample: q0 must lie in [0,1]");
    CounterRng rng(seed, kPairStream);
    std::vector<std::pair<int, int>> edges;
    for (int j = 2; j <= n; ++j) {
        for (int i = 1; i < j; ++i) {
            double u = static_cast<double>(rng.at(pair_index(i, j)) >> 11) * 0x1.0p-53;
            if (u < q0) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

PlantedInstance plant(int n, double q0, const Graph& h, std::uint64_t seed) {
    if (h.edge_count() == 0) throw std::invalid_argument("plant: subgraph must be non-empty");
    const int k = h.vertex_count();
    if (k > n) throw std::invalid_argument("plant: subgraph too large for host");
    if (q0 < 0.0 || q0 > 1.0) throw std::invalid_argument("plant: q0 must lie in [0,1]");

    // Uniform injective labeling via Fisher-Yates partial shuffle.
    CounterRng label_rng(seed, kLabelStream);
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    Embedding phi;
    phi.targets.resize(k);
    for (int i = 0; i < k; ++i) {
        std::uint64_t j = i + label_rng.next_below(static_cast<std::uint64_t>(n - i));
        std::swap(pool[i], pool[j]);
        phi.targets[i] = pool[i];
    }

    // Background draw shares the pair stream with er_sample; planted pairs
    // are forced present regardless of their background indicator.
    Graph background = er_sample(n, q0, seed);
    std::vector<std::pair<int, int>> edges = background.edges();
    for (const auto& [a, b] : h.edges()) {
        int i = phi.targets[a - 1];
        int j = phi.targets[b - 1];
        if (i > j) std::swap(i, j);
        edges.emplace_back(i, j);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    PlantedInstance out;
    out.graph = Graph(n, std::move(edges));
    out.hidden = std::move(phi);
    out.subgraph = h;
    out.n = n;
    out.q0 = q0;
    out.seed = seed;
    return out;
}

ShiftedAdjacency::ShiftedAdjacency(Graph base, double p) : base_(std::move(base)), p_(p) {
    if (p < 0.0 || p >= 1.0) throw std::invalid_argument("shifted_adjacency: p must lie in [0,1)");
    w_ = -p / (1.0 - p);
}

void ShiftedAdjacency::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    const int n = rows();
    y.resize(n);
    const double s = 1.0 - w_;  // edge value minus non-edge value
    const double total = x.sum();
    // M x = s * A x + w * ((sum x) 1 - x)
    for (int v = 1; v <= n; ++v) {
        double acc = 0.0;
        for (int u : base_.neighbors(v)) acc += x[u - 1];
        y[v - 1] = s * acc + w_ * (total - x[v - 1]);
    }
}

Eigen::MatrixXd ShiftedAdjacency::dense() const {
    const int n = rows();
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, w_);
    m.diagonal().setZero();
    for (const auto& [i, j] : base_.edges()) {
        m(i - 1, j - 1) = 1.0;
        m(j - 1, i - 1) = 1.0;
    }
    return m;
}

ShiftedAdjacency shifted_adjacency(Graph g, double p) { return ShiftedAdjacency(std::move(g), p); }

}  // namespace planted
