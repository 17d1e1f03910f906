#include "planted/stat_limits.hpp"

#include <bit>
#include <algorithm>
#include <cmath>
#include <limits>

#include "planted/embeddings.hpp"

namespace planted {

std::string to_string(Regime r) {
    switch (r) {
        case Regime::High: return "high";
        case Regime::Low: return "low";
        case Regime::Medium: return "medium";
    }
    return "?";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::StrongDistinguishableIndicative: return "strong-distinguishable-indicative";
        case Verdict::NotWeaklyDistinguishableIndicative:
            return "not-weakly-distinguishable-indicative";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

RegimeReport regime_report(const Graph& h, std::int64_t n, double q0, RegimeOptions opts) {
    if (h.vertex_count() > n) throw std::invalid_argument("regime_report: v(H) > n");
    if (q0 <= 0.0 || q0 >= 1.0) throw std::invalid_argument("regime_report: q0 in (0,1) required");

    RegimeReport rep;
    DensityWitness dw = max_density(h);
    rep.density = dw.value;
    rep.witness_size = static_cast<int>(dw.witness.size());

    const double d = dw.value.value();
    const double v = h.vertex_count();
    rep.density_ratio = d * std::log(1.0 / q0) / std::log(static_cast<double>(n));
    rep.size_ratio_25 = v / std::pow(static_cast<double>(n), 0.4);
    rep.size_ratio_12 = v / std::sqrt(static_cast<double>(n));

    const double r = d / std::log(v);
    if (r > opts.medium_high) {
        rep.regime = Regime::High;
    } else if (r < opts.medium_low) {
        rep.regime = Regime::Low;
    } else {
        rep.regime = Regime::Medium;
    }

    if (rep.density_ratio > 1.0) {
        rep.verdict = Verdict::StrongDistinguishableIndicative;
    } else {
        bool not_weak = false;
        switch (rep.regime) {
            case Regime::High: not_weak = rep.density_ratio < 1.0; break;
            case Regime::Low: not_weak = rep.size_ratio_12 < 1.0; break;
            case Regime::Medium:
                not_weak = rep.density_ratio < 1.0 && rep.size_ratio_25 < 1.0;
                break;
        }
        rep.verdict = not_weak ? Verdict::NotWeaklyDistinguishableIndicative : Verdict::Inconclusive;
    }
    return rep;
}

namespace {

int profile_enumerate(const Graph& h, int u) {
    const int n = h.vertex_count();
    std::vector<std::uint32_t> adj(n, 0);
    for (const auto& [a, b] : h.edges()) {
        adj[a - 1] |= 1u << (b - 1);
        adj[b - 1] |= 1u << (a - 1);
    }
    int best = 0;
    std::vector<int> pick(u);
    // All u-subsets of [n] in lexicographic order.
    for (int i = 0; i < u; ++i) pick[i] = i;
    for (;;) {
        std::uint32_t mask = 0;
        for (int i = 0; i < u; ++i) mask |= 1u << pick[i];
        int e = 0;
        for (int i = 0; i < u; ++i) e += std::popcount(adj[pick[i]] & mask);
        best = std::max(best, e / 2);
        int i = u - 1;
        while (i >= 0 && pick[i] == n - u + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < u; ++j) pick[j] = pick[j - 1] + 1;
    }
    return best;
}

struct ProfileBnB {
    const Graph& h;
    int target;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    int best = 0;
    std::vector<int> deg_in;  // edges from each vertex into the chosen set

    ProfileBnB(const Graph& h_, int target_, std::uint64_t budget_)
        : h(h_), target(target_), budget(budget_), deg_in(h_.vertex_count() + 1, 0) {}

    void search(int next, int chosen, int edges) {
        if (++nodes > budget) throw budget_exceeded_error("edge_max_profile: budget exceeded");
        if (chosen == target) {
            best = std::max(best, edges);
            return;
        }
        const int n = h.vertex_count();
        const int remaining = target - chosen;
        if (n - next + 1 < remaining) return;
        // Bound: all future internal pairs plus the best attachments available.
        std::vector<int> gains;
        gains.reserve(n - next + 1);
        for (int v = next; v <= n; ++v) gains.push_back(std::min(deg_in[v], chosen));
        std::partial_sort(gains.begin(), gains.begin() + remaining, gains.end(),
                          std::greater<int>());
        int bound = edges + remaining * (remaining - 1) / 2;
        for (int i = 0; i < remaining; ++i) bound += gains[i];
        if (bound <= best) return;

        for (int v = next; v <= n - remaining + 1; ++v) {
            // deg_in[v] is unaffected by its own neighbor bumps (no loops)
            for (int u : h.neighbors(v)) ++deg_in[u];
            search(v + 1, chosen + 1, edges + deg_in[v]);
            for (int u : h.neighbors(v)) --deg_in[u];
        }
    }
};

}  // namespace

int edge_max_profile(const Graph& h, int u, ProfileOptions opts) {
    if (u < 2 || u > h.vertex_count())
        throw std::invalid_argument("edge_max_profile: 2 <= u <= v(H) required");
    if (u == h.vertex_count()) return static_cast<int>(h.edge_count());
    if (h.vertex_count() <= 15) return profile_enumerate(h, u);
    ProfileBnB bnb(h, u, opts.node_budget);
    bnb.search(1, 0, 0);
    return bnb.best;
}

namespace {

double log_sum_exp(const std::vector<double>& xs) {
    double m = -std::numeric_limits<double>::infinity();
    for (double x : xs) m = std::max(m, x);
    if (!std::isfinite(m)) return m;
    double acc = 0.0;
    for (double x : xs) acc += std::exp(x - m);
    return m + std::log(acc);
}

}  // namespace

double log_delta_bar_closed_form(const Graph& h, std::int64_t n, double q0, ProfileOptions opts) {
    const int k = h.vertex_count();
    const double e = static_cast<double>(h.edge_count());
    const double log_q0 = std::log(q0);
    std::vector<double> terms;
    for (int u = 2; u <= k; ++u) {
        if (2 * k - u > n) continue;  // no pair of labelings fits
        const int e_u = edge_max_profile(h, u, opts);
        // #ordered pairs with image overlap u:
        //   (n)_{2k-u} (k!)^2 / (u! ((k-u)!)^2)
        double log_count = std::lgamma(static_cast<double>(n) + 1.0) -
                           std::lgamma(static_cast<double>(n - 2 * k + u) + 1.0) +
                           2.0 * std::lgamma(static_cast<double>(k) + 1.0) -
                           std::lgamma(static_cast<double>(u) + 1.0) -
                           2.0 * std::lgamma(static_cast<double>(k - u) + 1.0);
        terms.push_back(log_count + (2.0 * e - e_u) * log_q0);
    }
    return log_sum_exp(terms);
}

SecondMomentReport second_moment_report(const Graph& h, std::int64_t n, double q0,
                                        ProfileOptions opts) {
    if (q0 <= 0.0 || q0 >= 1.0)
        throw std::invalid_argument("second_moment_report: q0 in (0,1) required");
    const int k = h.vertex_count();
    if (k > n) throw std::invalid_argument("second_moment_report: v(H) > n");

    SecondMomentReport rep;
    rep.log_expected_count = log_expected_embedding_count(n, h, q0);

    const double kd = k;
    const double nd = static_cast<double>(n);
    const double log_inv_q0 = std::log(1.0 / q0);
    const double log_2pi = std::log(2.0 * M_PI);
    std::vector<double> logs;
    for (int u = 2; u <= k; ++u) {
        const int e_u = edge_max_profile(h, u, opts);
        const double ud = u;
        double log_g;
        if (u <= k - 1) {
            log_g = -1.5 * log_2pi + (2.0 - 2.0 * kd) + (2.0 * kd + 1.0) * std::log(kd) -
                    ud * std::log(nd - ud) - (2.0 * (kd - ud) + 1.0) * std::log(kd - ud) +
                    (2.0 * (kd - ud) + ud) - (ud + 0.5) * std::log(ud) + e_u * log_inv_q0;
        } else if (n > k) {
            log_g = (kd + 0.5) * std::log(kd) + (nd - kd + 0.5) * std::log(nd - kd) -
                    (nd + 0.5) * std::log(nd) + 2.0 - 0.5 * log_2pi + e_u * log_inv_q0;
        } else {
            log_g = -std::numeric_limits<double>::infinity();
        }
        rep.per_u.push_back({u, e_u, std::exp(log_g), log_g});
        logs.push_back(log_g);
    }
    rep.log_ratio_bound = log_sum_exp(logs);
    rep.ratio_bound = std::exp(rep.log_ratio_bound);
    rep.log_delta_bar = log_delta_bar_closed_form(h, n, q0, opts);
    return rep;
}

}  // namespace planted
