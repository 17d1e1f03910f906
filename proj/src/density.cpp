#include "planted/density.hpp"

#include <bit>
#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace planted {

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

namespace {

// Dinic max-flow on a small integer-capacity network.
class Dinic {
public:
    explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

    void add_edge(int u, int v, std::int64_t cap) {
        arcs_.push_back({v, head_[u], cap});
        head_[u] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({u, head_[v], 0});
        head_[v] = static_cast<int>(arcs_.size()) - 1;
    }

    std::int64_t max_flow(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            while (std::int64_t pushed = dfs(s, t, INT64_MAX)) flow += pushed;
        }
        return flow;
    }

    // Source side of the minimal min-cut: nodes reachable in the residual
    // graph after max_flow.
    std::vector<char> reachable(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a = head_[u]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = 1;
                    q.push(arcs_[a].to);
                }
            }
        }
        return seen;
    }

private:
    struct Arc {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        q.push(s);
        level_[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int a = head_[u]; a != -1; a = arcs_[a].next) {
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[u] + 1;
                    q.push(arcs_[a].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int u, int t, std::int64_t limit) {
        if (u == t) return limit;
        for (int& a = it_[u]; a != -1; a = arcs_[a].next) {
            Arc& arc = arcs_[a];
            if (arc.cap > 0 && level_[arc.to] == level_[u] + 1) {
                std::int64_t pushed = dfs(arc.to, t, std::min(limit, arc.cap));
                if (pushed > 0) {
                    arc.cap -= pushed;
                    arcs_[a ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
};

// Min-cut network for the guess g = p/q: cut value is
// 2qm - 2 max_F (q e(F) - p v(F)).  `forced` (if >0) pins that vertex to
// the source side.
struct CutResult {
    std::int64_t max_qe_minus_pv;  // max over subsets F (possibly empty when not forced)
    std::vector<int> source_side;  // F attaining it (minimal such set)
};

CutResult density_cut(const Graph& h, std::int64_t p, std::int64_t q, int forced = 0) {
    const int n = h.vertex_count();
    const std::int64_t m = h.edge_count();
    const int s = 0, t = n + 1;
    Dinic net(n + 2);
    const std::int64_t inf = 4 * q * m + 4 * p * n + 16;
    for (int v = 1; v <= n; ++v) {
        net.add_edge(s, v, (v == forced) ? inf : q * h.degree(v));
        net.add_edge(v, t, 2 * p);
    }
    for (const auto& [u, v] : h.edges()) {
        net.add_edge(u, v, q);
        net.add_edge(v, u, q);
    }
    std::int64_t flow = net.max_flow(s, t);
    // Cut value for source side F: 2qm - 2(q e(F) - p v(F)); when `forced`
    // is set, its source arc never enters the cut, so the same identity
    // holds over sets F containing it.
    CutResult out;
    out.max_qe_minus_pv = (2 * q * m - flow) / 2;
    auto seen = net.reachable(s);
    for (int v = 1; v <= n; ++v)
        if (seen[v]) out.source_side.push_back(v);
    return out;
}

std::int64_t induced_edges(const Graph& h, const std::vector<int>& verts) {
    std::vector<char> in(h.vertex_count() + 1, 0);
    for (int v : verts) in[v] = 1;
    std::int64_t e = 0;
    for (const auto& [a, b] : h.edges())
        if (in[a] && in[b]) ++e;
    return e;
}

}  // namespace

DensityWitness max_density(const Graph& h) {
    if (h.edge_count() == 0) throw std::invalid_argument("max_density: empty graph");
    if (h.vertex_count() > 2000)
        throw std::invalid_argument("max_density: flow method limited to v(H) <= 2000");

    // Dinkelbach: repeatedly improve the guess with the density of the best
    // cut set; terminates at the exact optimum.
    Rational g(h.edge_count(), h.vertex_count());
    for (;;) {
        CutResult cut = density_cut(h, g.num, g.den);
        if (cut.max_qe_minus_pv <= 0) break;  // nothing strictly denser than g
        std::int64_t e = induced_edges(h, cut.source_side);
        Rational improved(e, static_cast<std::int64_t>(cut.source_side.size()));
        if (!(g < improved))
            throw std::logic_error("max_density: Dinkelbach failed to improve");
        g = improved;
    }

    // Minimal-cardinality witness: force each vertex to the source side at
    // the exact optimum; keep the smallest optimal set found.
    DensityWitness best;
    best.value = g;
    for (int u = 1; u <= h.vertex_count(); ++u) {
        CutResult cut = density_cut(h, g.num, g.den, u);
        if (cut.max_qe_minus_pv < 0) continue;  // u not in any maximizer
        if (best.witness.empty() || cut.source_side.size() < best.witness.size())
            best.witness = cut.source_side;
    }
    std::int64_t e = induced_edges(h, best.witness);
    if (best.witness.empty() ||
        !(Rational(e, static_cast<std::int64_t>(best.witness.size())) == g))
        throw std::logic_error("max_density: witness does not attain the optimum");
    return best;
}

DensityWitness max_density_exhaustive(const Graph& h) {
    if (h.edge_count() == 0) throw std::invalid_argument("max_density: empty graph");
    const int n = h.vertex_count();
    if (n > 20) throw std::invalid_argument("max_density_exhaustive: limited to v(H) <= 20");

    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [a, b] : h.edges()) {
        adj[a - 1] |= 1u << (b - 1);
        adj[b - 1] |= 1u << (a - 1);
    }
    std::int64_t best_e = 0, best_v = 1;
    std::uint32_t best_mask = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::int64_t e = 0;
        for (std::uint32_t bits = mask; bits;) {
            int v = std::countr_zero(bits);
            bits &= bits - 1;
            e += std::popcount(adj[v] & mask);
        }
        e /= 2;
        std::int64_t v = std::popcount(mask);
        // strictly denser, or equally dense with fewer vertices
        __int128 lhs = static_cast<__int128>(e) * best_v;
        __int128 rhs = static_cast<__int128>(best_e) * v;
        if (best_mask == 0 || lhs > rhs || (lhs == rhs && v < best_v)) {
            best_e = e;
            best_v = v;
            best_mask = mask;
        }
    }
    DensityWitness out;
    out.value = Rational(best_e, best_v);
    for (int v = 0; v < n; ++v)
        if (best_mask & (1u << v)) out.witness.push_back(v + 1);
    return out;
}

}  // namespace planted
