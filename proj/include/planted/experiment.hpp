#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "planted/graph.hpp"

namespace planted {

inline constexpr const char* kVersion = "0.1.0";

struct FamilySpec {
    std::string name;  // clique | hypercube | tree | cycle_power | file
    int k = 0;         // clique size / cycle length
    int m = 0;         // hypercube dimension / cycle power
    int d = 0, r = 0;  // tree degree / generations
    std::string path;  // custom edge-list or JSON graph
};

Graph make_family(const FamilySpec& spec);

struct MethodParams {
    double delta = 0.3;
    double eps = 0.1;
    double tol = 1e-6;
    int max_iter = 10000;
    double slack_frac = 1e-3;
    int identify_k = 0;             // 0: use v(H)
    double refine_eps = -1.0;       // <0: no refinement stage
    std::uint64_t budget = 100'000'000;
    double wall_budget_ms = 0.0;    // 0: unlimited; over-budget trials are marked
};

struct ExperimentConfig {
    FamilySpec family;
    std::int64_t n = 0;
    double q0 = 0.0;
    std::string method;  // spectral | sdp | exhaustive | identify
    int trials = 1;
    std::uint64_t base_seed = 0;
    MethodParams params;
};

struct TrialRecord {
    int index = 0;
    std::uint64_t seed = 0;
    std::string hypothesis;  // "null" | "planted"
    double statistic = 0.0;
    bool decision = false;
    double wall_ms = 0.0;
    bool over_budget = false;
    bool failed = false;
    std::string error;
    double precision = -1.0;  // identify on planted trials only
    double recall = -1.0;
    bool exact_recovery = false;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string config_hash;
    std::string version = kVersion;
    std::vector<TrialRecord> trials;
    double fpr = 0.0;
    double fnr = 0.0;
    double risk = 0.0;
    int failed_trials = 0;
    double precision_mean = -1.0;
    double recall_mean = -1.0;
    double exact_recovery_rate = -1.0;
};

// Runs `trials` paired draws (one null, one planted per trial) with seeds
// derived from (base_seed, trial, hypothesis); applies the configured
// method to both and aggregates error rates. Per-trial failures are
// recorded, never fatal. Trials run as an independent parallel map.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Cartesian sweep over the listed values (keys: n, q0, trials, base_seed,
// k, m, d, r); family constructions are cached across cells.
std::vector<ExperimentReport> sweep(const ExperimentConfig& base,
                                    const std::map<std::string, std::vector<double>>& grid);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& c);
std::string config_hash(const ExperimentConfig& c);

nlohmann::ordered_json report_to_json(const ExperimentReport& r, bool include_timing = false);
std::string report_to_csv(const std::vector<ExperimentReport>& reports,
                          bool include_timing = false);

}  // namespace planted
