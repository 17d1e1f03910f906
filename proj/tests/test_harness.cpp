#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "planted/experiment.hpp"
#include "planted/rng.hpp"
#include "planted/spectral.hpp"

using namespace planted;

namespace {

ExperimentConfig small_spectral_config() {
    ExperimentConfig cfg;
    cfg.family = {"clique", 30, 0, 0, 0, ""};
    cfg.n = 200;
    cfg.q0 = 0.2;
    cfg.method = "spectral";
    cfg.trials = 4;
    cfg.base_seed = 99;
    cfg.params.tol = 1e-4;
    return cfg;
}

}  // namespace

TEST_CASE("experiment reruns are byte identical") {
    ExperimentConfig cfg = small_spectral_config();
    ExperimentReport a = run_experiment(cfg);
    ExperimentReport b = run_experiment(cfg);
    CHECK(report_to_json(a).dump(2) == report_to_json(b).dump(2));
    CHECK(report_to_csv({a}) == report_to_csv({b}));
}

TEST_CASE("config json round trips") {
    ExperimentConfig cfg = small_spectral_config();
    cfg.params.refine_eps = 0.25;
    cfg.params.identify_k = 7;
    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(config_to_json(back).dump() == config_to_json(cfg).dump());
    CHECK(config_hash(back) == config_hash(cfg));
}

TEST_CASE("seed derivation has no collisions across a large report") {
    std::set<std::uint64_t> seen;
    const int trials = 10000;
    for (int i = 0; i < trials; ++i) {
        seen.insert(derive_stream(42, i, 0));
        seen.insert(derive_stream(42, i, 1));
    }
    CHECK(seen.size() == 2 * static_cast<std::size_t>(trials));
}

TEST_CASE("aggregates equal recomputation from per-trial records") {
    ExperimentConfig cfg = small_spectral_config();
    ExperimentReport rep = run_experiment(cfg);
    int nulls = 0, fired = 0, planted = 0, missed = 0;
    for (const TrialRecord& t : rep.trials) {
        CHECK_FALSE(t.failed);
        if (t.hypothesis == "null") {
            ++nulls;
            fired += t.decision;
        } else {
            ++planted;
            missed += !t.decision;
        }
    }
    CHECK(rep.fpr == doctest::Approx(double(fired) / nulls));
    CHECK(rep.fnr == doctest::Approx(double(missed) / planted));
    CHECK(rep.risk == doctest::Approx(rep.fpr + rep.fnr));
    CHECK(nulls == cfg.trials);
    CHECK(planted == cfg.trials);
}

TEST_CASE("exhaustive experiment false positive rate sits under the first-moment bound") {
    ExperimentConfig cfg;
    cfg.family = {"clique", 4, 0, 0, 0, ""};
    cfg.n = 30;
    cfg.q0 = 0.1;
    cfg.method = "exhaustive";
    cfg.trials = 50;
    cfg.base_seed = 7;
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.fpr <= 0.66);
    CHECK(rep.fnr == 0.0);  // the planted copy is always found
}

TEST_CASE("identify experiment reports precision and recall") {
    ExperimentConfig cfg;
    cfg.family = {"clique", 40, 0, 0, 0, ""};
    cfg.n = 200;
    cfg.q0 = 0.1;
    cfg.method = "identify";
    cfg.trials = 3;
    cfg.base_seed = 11;
    cfg.params.tol = 1e-5;
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.precision_mean >= 0.9);
    CHECK(rep.recall_mean >= 0.9);
    CHECK(rep.exact_recovery_rate >= 0.0);
    bool saw_planted_scores = false;
    for (const TrialRecord& t : rep.trials) {
        if (t.hypothesis == "planted") {
            CHECK(t.precision >= 0.0);
            saw_planted_scores = true;
        } else {
            CHECK(t.precision == -1.0);
        }
    }
    CHECK(saw_planted_scores);
}

TEST_CASE("per-trial failures are recorded without aborting the batch") {
    ExperimentConfig cfg = small_spectral_config();
    cfg.family = {"clique", 500, 0, 0, 0, ""};  // v(H) > n: plant() must fail
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.failed_trials == cfg.trials);  // planted side fails, null side runs
    int null_ok = 0;
    for (const TrialRecord& t : rep.trials)
        if (!t.failed && t.hypothesis == "null") ++null_ok;
    CHECK(null_ok == cfg.trials);
}

TEST_CASE("over-budget trials are marked, not dropped") {
    ExperimentConfig cfg = small_spectral_config();
    cfg.params.wall_budget_ms = 1e-9;
    ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.trials.size() == 2 * static_cast<std::size_t>(cfg.trials));
    for (const TrialRecord& t : rep.trials) {
        CHECK(t.over_budget);
        CHECK_FALSE(t.failed);
    }
    CHECK_THROWS_AS(([&] {
                        ExperimentConfig bad = small_spectral_config();
                        bad.trials = 0;
                        run_experiment(bad);
                    }()),
                    std::invalid_argument);
}

TEST_CASE("empty sweep grid gives an empty table") {
    CHECK(sweep(small_spectral_config(), {}).empty());
    CHECK(sweep(small_spectral_config(), {{"q0", {}}}).empty());
}

TEST_CASE("sweep over q0 reproduces the sigma column") {
    ExperimentConfig cfg = small_spectral_config();
    cfg.trials = 2;
    std::vector<ExperimentReport> reports = sweep(cfg, {{"q0", {0.1, 0.25, 0.4}}});
    REQUIRE(reports.size() == 3);
    std::string csv = report_to_csv(reports);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header.find("sigma_q0") != std::string::npos);
    for (const ExperimentReport& rep : reports) {
        const double want = sigma(rep.config.q0);
        bool found = false;
        std::string line;
        std::istringstream rescan(csv);
        while (std::getline(rescan, line)) {
            if (line.find(rep.config_hash) == std::string::npos) continue;
            // sigma_q0 is column 6 (1-based)
            std::istringstream cells(line);
            std::string cell;
            for (int c = 0; c < 6; ++c) std::getline(cells, cell, ',');
            CHECK(std::stod(cell) == doctest::Approx(want).epsilon(1e-12));
            found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("false negatives fall along a growing clique sweep") {
    ExperimentConfig cfg;
    cfg.family = {"clique", 0, 0, 0, 0, ""};
    cfg.n = 600;
    cfg.q0 = 0.3;
    cfg.method = "spectral";
    cfg.trials = 12;
    cfg.base_seed = 3;
    cfg.params.tol = 1e-3;
    const double scale = sigma(cfg.q0) * std::sqrt(static_cast<double>(cfg.n));
    std::vector<double> ks;
    for (double ratio : {1.5, 2.0, 2.5, 3.0, 3.5})
        ks.push_back(std::ceil(ratio * scale));
    std::vector<ExperimentReport> reports = sweep(cfg, {{"k", ks}});
    REQUIRE(reports.size() == ks.size());
    for (std::size_t i = 1; i < reports.size(); ++i) {
        CHECK(reports[i].fnr <= reports[i - 1].fnr + 0.15);
    }
    CHECK(reports.front().fnr >= reports.back().fnr);
    CHECK(reports.back().fnr == 0.0);
}
