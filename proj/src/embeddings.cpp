#include "planted/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "planted/density.hpp"

namespace planted {

namespace {

// Map H-vertices in an order that keeps each new vertex attached to the
// already-mapped prefix where possible: highest degree first, then greedily
// by (mapped neighbors, degree).
std::vector<int> search_order(const Graph& h) {
    const int k = h.vertex_count();
    std::vector<int> order;
    std::vector<char> placed(k + 1, 0);
    for (int step = 0; step < k; ++step) {
        int best = -1, best_attached = -1, best_deg = -1;
        for (int v = 1; v <= k; ++v) {
            if (placed[v]) continue;
            int attached = 0;
            for (int u : h.neighbors(v)) attached += placed[u];
            if (attached > best_attached ||
                (attached == best_attached && h.degree(v) > best_deg)) {
                best = v;
                best_attached = attached;
                best_deg = h.degree(v);
            }
        }
        placed[best] = 1;
        order.push_back(best);
    }
    return order;
}

struct Searcher {
    const Graph& h;
    const Graph& g;
    std::vector<int> order;
    std::vector<std::vector<int>> mapped_neighbors;  // per depth: H-neighbors already placed
    std::vector<int> image;                          // H-vertex -> G-vertex or 0
    std::vector<char> used;                          // G-vertex used
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::uint64_t count = 0;
    bool exceeded = false;

    Searcher(const Graph& h_, const Graph& g_, std::uint64_t budget_)
        : h(h_), g(g_), order(search_order(h_)), image(h_.vertex_count() + 1, 0),
          used(g_.vertex_count() + 1, 0), budget(budget_) {
        mapped_neighbors.resize(order.size());
        std::vector<char> placed(h.vertex_count() + 1, 0);
        for (std::size_t d = 0; d < order.size(); ++d) {
            for (int u : h.neighbors(order[d]))
                if (placed[u]) mapped_neighbors[d].push_back(u);
            placed[order[d]] = 1;
        }
    }

    void run(std::size_t depth) {
        if (exceeded) return;
        if (depth == order.size()) {
            ++count;
            return;
        }
        const int hv = order[depth];
        const int want_deg = h.degree(hv);
        const auto& anchors = mapped_neighbors[depth];
        if (!anchors.empty()) {
            // Candidates restricted to G-neighbors of one mapped anchor.
            for (int cand : g.neighbors(image[anchors[0]])) {
                try_candidate(depth, hv, want_deg, anchors, cand);
                if (exceeded) return;
            }
        } else {
            for (int cand = 1; cand <= g.vertex_count(); ++cand) {
                try_candidate(depth, hv, want_deg, anchors, cand);
                if (exceeded) return;
            }
        }
    }

    void try_candidate(std::size_t depth, int hv, int want_deg,
                       const std::vector<int>& anchors, int cand) {
        if (++nodes > budget) {
            exceeded = true;
            return;
        }
        if (used[cand] || g.degree(cand) < want_deg) return;
        for (std::size_t a = 1; a < anchors.size(); ++a) {
            if (!g.has_edge(cand, image[anchors[a]])) return;
        }
        image[hv] = cand;
        used[cand] = 1;
        run(depth + 1);
        used[cand] = 0;
        image[hv] = 0;
    }
};

}  // namespace

CountResult count_embeddings(const Graph& h, const Graph& g, CountOptions opts) {
    if (h.vertex_count() > g.vertex_count())
        throw std::invalid_argument("count_embeddings: v(H) > v(G)");
    Searcher s(h, g, opts.node_budget);
    s.run(0);
    CountResult out;
    out.nodes_visited = s.nodes;
    out.budget_exceeded = s.exceeded;
    out.count = s.exceeded ? 0 : s.count;
    return out;
}

double log_expected_embedding_count(std::int64_t n, const Graph& h, double q0) {
    if (q0 <= 0.0 || q0 > 1.0)
        throw std::invalid_argument("log_expected_embedding_count: q0 in (0,1] required");
    double log_falling = 0.0;
    for (int i = 0; i < h.vertex_count(); ++i)
        log_falling += std::log(static_cast<double>(n - i));
    return log_falling + static_cast<double>(h.edge_count()) * std::log(q0);
}

LikelihoodRatio likelihood_ratio(const Graph& g, const Graph& h, double q0, CountOptions opts) {
    LikelihoodRatio out;
    out.counting = count_embeddings(h, g, opts);
    if (out.counting.budget_exceeded) {
        out.ratio = std::numeric_limits<double>::quiet_NaN();
        out.log_ratio = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    if (out.counting.count == 0) {
        out.ratio = 0.0;
        out.log_ratio = -std::numeric_limits<double>::infinity();
        return out;
    }
    const double log_e0 = log_expected_embedding_count(g.vertex_count(), h, q0);
    out.log_ratio = std::log(static_cast<double>(out.counting.count)) - log_e0;
    out.ratio = std::exp(out.log_ratio);
    return out;
}

TestOutcome exhaustive_test(const Graph& g, const Graph& h, double q0, CountOptions opts) {
    DensityWitness densest = max_density(h);
    Graph f = h.induced_subgraph(densest.witness);
    CountResult res = count_embeddings(f, g, opts);
    TestOutcome out;
    out.test_name = "exhaustive";
    out.statistic = static_cast<double>(res.count);
    out.threshold = 0.0;
    out.decision = res.count > 0;
    out.reliable = !res.budget_exceeded;
    out.info["witness_vertices"] = static_cast<double>(densest.witness.size());
    out.info["witness_density"] = densest.value.value();
    out.info["q0"] = q0;
    return out;
}

}  // namespace planted
