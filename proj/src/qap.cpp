#include "planted/qap.hpp"

#include <algorithm>
#include <stdexcept>

namespace planted {

std::int64_t qap_objective(const Graph& g, const Graph& h, const Embedding& phi) {
    validate_embedding(phi, h.vertex_count(), g.vertex_count());
    std::int64_t total = 0;
    for (const auto& [a, b] : h.edges()) {
        if (g.has_edge(phi.targets[a - 1], phi.targets[b - 1])) total += 2;
    }
    return total;
}

namespace {

struct QapSearch {
    const Graph& g;
    const Graph& h;
    std::vector<int> order;       // H-vertices, highest degree first
    std::vector<int> image;       // H-vertex -> G-vertex or 0
    std::vector<char> used;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    bool exceeded = false;
    std::int64_t best = -1;
    std::vector<int> best_image;

    QapSearch(const Graph& g_, const Graph& h_, std::uint64_t budget_)
        : g(g_), h(h_), image(h_.vertex_count() + 1, 0), used(g_.vertex_count() + 1, 0),
          budget(budget_) {
        order.resize(h.vertex_count());
        for (int v = 1; v <= h.vertex_count(); ++v) order[v - 1] = v;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return h.degree(a) > h.degree(b); });
    }

    // Edges of H with both endpoints inside the first `depth` placed
    // vertices can no longer change; everything else is at most present.
    void run(std::size_t depth, std::int64_t partial, std::int64_t undecided) {
        if (exceeded) return;
        if (depth == order.size()) {
            if (partial > best) {
                best = partial;
                best_image.assign(image.begin() + 1, image.end());
            }
            return;
        }
        if (partial + 2 * undecided <= best) return;
        const int hv = order[depth];
        std::int64_t newly_decided = 0;
        for (int u : h.neighbors(hv)) newly_decided += (image[u] != 0) ? 1 : 0;
        for (int cand = 1; cand <= g.vertex_count(); ++cand) {
            if (++nodes > budget) {
                exceeded = true;
                return;
            }
            if (used[cand]) continue;
            std::int64_t gain = 0;
            for (int u : h.neighbors(hv)) {
                if (image[u] != 0 && g.has_edge(cand, image[u])) gain += 2;
            }
            image[hv] = cand;
            used[cand] = 1;
            run(depth + 1, partial + gain, undecided - newly_decided);
            used[cand] = 0;
            image[hv] = 0;
            if (exceeded) return;
        }
    }
};

}  // namespace

QapResult qap_brute_force(const Graph& g, const Graph& h, QapOptions opts) {
    const int n = g.vertex_count();
    const int k = h.vertex_count();
    if (k > n) throw std::invalid_argument("qap_brute_force: v(H) > v(G)");
    // Search space (n)_k must fit the budget up front.
    double space = 1.0;
    for (int i = 0; i < k; ++i) space *= static_cast<double>(n - i);
    QapResult out;
    if (space > static_cast<double>(opts.node_budget)) {
        out.budget_exceeded = true;
        return out;
    }
    QapSearch s(g, h, opts.node_budget);
    s.run(0, 0, h.edge_count());
    out.nodes_visited = s.nodes;
    out.budget_exceeded = s.exceeded;
    if (!s.exceeded) {
        out.opt = s.best;
        out.argmax.targets = s.best_image;
        // best_image is ordered by H-vertex index already.
    }
    return out;
}

Eigen::MatrixXd lift_assignment(const Embedding& phi, int n, int k) {
    validate_embedding(phi, k, n);
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n) * k);
    for (int i = 1; i <= k; ++i) {
        const int j = phi.targets[i - 1];
        y[static_cast<Eigen::Index>(j - 1) * k + (i - 1)] = 1.0;
    }
    return y * y.transpose();
}

}  // namespace planted
