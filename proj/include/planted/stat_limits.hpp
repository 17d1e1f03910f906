#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "planted/density.hpp"
#include "planted/graph.hpp"

namespace planted {

struct budget_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Regime { High, Low, Medium };
enum class Verdict {
    StrongDistinguishableIndicative,
    NotWeaklyDistinguishableIndicative,
    Inconclusive,
};

std::string to_string(Regime r);
std::string to_string(Verdict v);

struct RegimeOptions {
    // Medium regime declared as d(H)/log v(H) within [medium_low, medium_high].
    double medium_low = 0.25;
    double medium_high = 4.0;
};

// Finite-n evaluation of the asymptotic threshold conditions. Ratios are
// reported as-is; verdicts are indicative, never a truth claim, and are
// mutually exclusive by construction (the strong condition takes priority).
struct RegimeReport {
    double density_ratio = 0.0;   // d(H) log(1/q0) / log n
    double size_ratio_25 = 0.0;   // v(H) / n^{2/5}
    double size_ratio_12 = 0.0;   // v(H) / n^{1/2}
    Regime regime = Regime::Medium;
    Verdict verdict = Verdict::Inconclusive;
    Rational density;             // d(H)
    int witness_size = 0;         // vertices of the minimal densest subgraph
};

RegimeReport regime_report(const Graph& h, std::int64_t n, double q0, RegimeOptions opts = {});

struct ProfileOptions {
    std::uint64_t node_budget = 100'000'000;
};

// e_H(u): maximum edge count among subgraphs of H on u vertices. Exact
// subset enumeration for v(H) <= 15, branch-and-bound with a node budget
// above (throws budget_exceeded_error).
int edge_max_profile(const Graph& h, int u, ProfileOptions opts = {});

struct SecondMomentTerm {
    int u = 0;
    int e_profile = 0;  // e_H(u)
    double g = 0.0;
    double log_g = 0.0;
};

// Second-moment diagnostic for the embedding count under the null: the
// overlap-pair sum Delta-bar and the computable per-overlap bound g(u) on
// Delta-bar / (E0 N)^2. Everything is evaluated in log space.
struct SecondMomentReport {
    double log_expected_count = 0.0;  // log E0 N(H;G)
    double ratio_bound = 0.0;         // sum_u g(u)
    double log_ratio_bound = 0.0;
    double log_delta_bar = 0.0;       // closed-form pair sum
    std::vector<SecondMomentTerm> per_u;
};

SecondMomentReport second_moment_report(const Graph& h, std::int64_t n, double q0,
                                        ProfileOptions opts = {});

// Closed-form log Delta-bar = log sum_u #{ordered labeling pairs with
// overlap u} * q0^{2 e(H) - e_H(u)}.
double log_delta_bar_closed_form(const Graph& h, std::int64_t n, double q0,
                                 ProfileOptions opts = {});

}  // namespace planted
