#pragma once

#include <cstdint>

#include "planted/graph.hpp"
#include "planted/test_outcome.hpp"

namespace planted {

struct CountOptions {
    std::uint64_t node_budget = 100'000'000;  // visited search nodes
};

// Exact count of injective labelings of V(H) into V(G) mapping every edge
// of H onto an edge of G. If the budget is exceeded the count is not
// meaningful and budget_exceeded is set; a wrong count is never returned.
struct CountResult {
    std::uint64_t count = 0;
    std::uint64_t nodes_visited = 0;
    bool budget_exceeded = false;
};

CountResult count_embeddings(const Graph& h, const Graph& g, CountOptions opts = {});

// log E0 N(H;G) = log (n)_{v(H)} + e(H) log q0  under the null at density q0.
double log_expected_embedding_count(std::int64_t n, const Graph& h, double q0);

// N(H;G) / E0 N(H;G), the likelihood ratio of planted vs null evaluated at
// G. Computed in log space; ratio 0 (log -inf) when no embedding exists.
struct LikelihoodRatio {
    double ratio = 0.0;
    double log_ratio = 0.0;
    CountResult counting;
};

LikelihoodRatio likelihood_ratio(const Graph& g, const Graph& h, double q0, CountOptions opts = {});

// Information-theoretic test: search for a copy of the densest subgraph of
// H; reject the null iff one exists. Statistic is the embedding count.
TestOutcome exhaustive_test(const Graph& g, const Graph& h, double q0, CountOptions opts = {});

}  // namespace planted
