#include "planted/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "planted/embeddings.hpp"
#include "planted/graph_io.hpp"
#include "planted/parallel.hpp"
#include "planted/rng.hpp"
#include "planted/sampler.hpp"
#include "planted/sdp.hpp"
#include "planted/spectral.hpp"

namespace planted {

Graph make_family(const FamilySpec& spec) {
    if (spec.name == "clique") return clique(spec.k);
    if (spec.name == "hypercube") return hypercube(spec.m);
    if (spec.name == "tree") return regular_tree(spec.d, spec.r);
    if (spec.name == "cycle_power") return cycle_power(spec.k, spec.m);
    if (spec.name == "path") return path_graph(spec.k);
    if (spec.name == "file") return load_graph_file(spec.path);
    throw std::invalid_argument("unknown family: " + spec.name);
}

namespace {

struct TrialOutcome {
    double statistic = 0.0;
    bool decision = false;
    double precision = -1.0;
    double recall = -1.0;
    bool exact_recovery = false;
};

TrialOutcome apply_method(const ExperimentConfig& cfg, const Graph& h, const Graph& g,
                          const std::vector<int>* planted_set) {
    TrialOutcome out;
    if (cfg.method == "spectral") {
        TestOutcome t = spectral_test(g, cfg.q0, {cfg.params.tol, cfg.params.max_iter, 0});
        out.statistic = t.statistic;
        out.decision = t.decision;
    } else if (cfg.method == "exhaustive") {
        TestOutcome t = exhaustive_test(g, h, cfg.q0, {cfg.params.budget});
        out.statistic = t.statistic;
        out.decision = t.decision;
    } else if (cfg.method == "sdp") {
        SdpParams p;
        p.tol = cfg.params.tol;
        p.max_iter = cfg.params.max_iter;
        p.slack_frac = cfg.params.slack_frac;
        TestOutcome t = sdp_test(g, h, p);
        out.statistic = t.statistic;
        out.decision = t.decision;
    } else if (cfg.method == "identify") {
        IdentifyOptions opts;
        opts.tol = cfg.params.tol;
        opts.max_iter = cfg.params.max_iter;
        if (cfg.params.refine_eps >= 0.0) opts.refine_eps = cfg.params.refine_eps;
        const int k = cfg.params.identify_k > 0 ? cfg.params.identify_k : h.vertex_count();
        IdentificationResult res = identify(g, cfg.q0, k, opts);
        out.statistic = static_cast<double>(res.selected.size());
        out.decision = !res.selected.empty();
        if (planted_set != nullptr) {
            std::vector<int> truth = *planted_set;
            std::sort(truth.begin(), truth.end());
            int hits = 0;
            for (int v : res.selected)
                if (std::binary_search(truth.begin(), truth.end(), v)) ++hits;
            out.precision = res.selected.empty() ? 1.0
                                                 : static_cast<double>(hits) /
                                                       static_cast<double>(res.selected.size());
            out.recall = static_cast<double>(hits) / static_cast<double>(truth.size());
            out.exact_recovery = hits == static_cast<int>(truth.size()) &&
                                 res.selected.size() == truth.size();
        }
    } else {
        throw std::invalid_argument("unknown method: " + cfg.method);
    }
    return out;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_experiment: trials >= 1 required");
    const Graph h = make_family(cfg.family);

    ExperimentReport rep;
    rep.config = cfg;
    rep.config_hash = config_hash(cfg);
    rep.trials.resize(static_cast<std::size_t>(cfg.trials) * 2);

    parallel_for(static_cast<std::size_t>(cfg.trials) * 2, [&](std::size_t slot) {
        const int trial = static_cast<int>(slot / 2);
        const bool is_planted = (slot % 2) == 1;
        TrialRecord& rec = rep.trials[slot];
        rec.index = trial;
        rec.hypothesis = is_planted ? "planted" : "null";
        rec.seed = derive_stream(cfg.base_seed, static_cast<std::uint64_t>(trial),
                                 is_planted ? 1 : 0);
        const auto start = std::chrono::steady_clock::now();
        try {
            if (is_planted) {
                PlantedInstance inst = plant(static_cast<int>(cfg.n), cfg.q0, h, rec.seed);
                TrialOutcome o = apply_method(cfg, h, inst.graph, &inst.hidden.targets);
                rec.statistic = o.statistic;
                rec.decision = o.decision;
                rec.precision = o.precision;
                rec.recall = o.recall;
                rec.exact_recovery = o.exact_recovery;
            } else {
                Graph g = er_sample(static_cast<int>(cfg.n), cfg.q0, rec.seed);
                TrialOutcome o = apply_method(cfg, h, g, nullptr);
                rec.statistic = o.statistic;
                rec.decision = o.decision;
            }
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        if (cfg.params.wall_budget_ms > 0.0 && rec.wall_ms > cfg.params.wall_budget_ms)
            rec.over_budget = true;
    });

    int null_total = 0, null_fired = 0, planted_total = 0, planted_missed = 0;
    int rec_count = 0, exact = 0;
    double prec_acc = 0.0, rec_acc = 0.0;
    for (const TrialRecord& rec : rep.trials) {
        if (rec.failed) {
            ++rep.failed_trials;
            continue;
        }
        if (rec.hypothesis == "null") {
            ++null_total;
            null_fired += rec.decision ? 1 : 0;
        } else {
            ++planted_total;
            planted_missed += rec.decision ? 0 : 1;
            if (rec.precision >= 0.0) {
                ++rec_count;
                prec_acc += rec.precision;
                rec_acc += rec.recall;
                exact += rec.exact_recovery ? 1 : 0;
            }
        }
    }
    rep.fpr = null_total ? static_cast<double>(null_fired) / null_total : 0.0;
    rep.fnr = planted_total ? static_cast<double>(planted_missed) / planted_total : 0.0;
    rep.risk = rep.fpr + rep.fnr;
    if (rec_count > 0) {
        rep.precision_mean = prec_acc / rec_count;
        rep.recall_mean = rec_acc / rec_count;
        rep.exact_recovery_rate = static_cast<double>(exact) / rec_count;
    }
    return rep;
}

std::vector<ExperimentReport> sweep(const ExperimentConfig& base,
                                    const std::map<std::string, std::vector<double>>& grid) {
    if (grid.empty()) return {};
    std::vector<ExperimentConfig> cells{base};
    for (const auto& [key, values] : grid) {
        if (values.empty()) return {};  // empty axis: empty table
        std::vector<ExperimentConfig> expanded;
        expanded.reserve(cells.size() * values.size());
        for (const ExperimentConfig& cell : cells) {
            for (double v : values) {
                ExperimentConfig next = cell;
                if (key == "n") next.n = static_cast<std::int64_t>(v);
                else if (key == "q0") next.q0 = v;
                else if (key == "trials") next.trials = static_cast<int>(v);
                else if (key == "base_seed") next.base_seed = static_cast<std::uint64_t>(v);
                else if (key == "k") next.family.k = static_cast<int>(v);
                else if (key == "m") next.family.m = static_cast<int>(v);
                else if (key == "d") next.family.d = static_cast<int>(v);
                else if (key == "r") next.family.r = static_cast<int>(v);
                else if (key == "identify_k") next.params.identify_k = static_cast<int>(v);
                else throw std::invalid_argument("sweep: unknown axis " + key);
                expanded.push_back(next);
            }
        }
        cells = std::move(expanded);
    }
    std::vector<ExperimentReport> out;
    out.reserve(cells.size());
    for (const ExperimentConfig& cell : cells) out.push_back(run_experiment(cell));
    return out;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& c) {
    nlohmann::ordered_json j;
    j["family"] = {{"name", c.family.name}, {"k", c.family.k}, {"m", c.family.m},
                   {"d", c.family.d},       {"r", c.family.r}, {"path", c.family.path}};
    j["n"] = c.n;
    j["q0"] = c.q0;
    j["method"] = c.method;
    j["trials"] = c.trials;
    j["base_seed"] = c.base_seed;
    j["params"] = {{"delta", c.params.delta},
                   {"eps", c.params.eps},
                   {"tol", c.params.tol},
                   {"max_iter", c.params.max_iter},
                   {"slack_frac", c.params.slack_frac},
                   {"identify_k", c.params.identify_k},
                   {"refine_eps", c.params.refine_eps},
                   {"budget", c.params.budget},
                   {"wall_budget_ms", c.params.wall_budget_ms}};
    return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    const auto& fam = j.at("family");
    c.family.name = fam.at("name").get<std::string>();
    c.family.k = fam.value("k", 0);
    c.family.m = fam.value("m", 0);
    c.family.d = fam.value("d", 0);
    c.family.r = fam.value("r", 0);
    c.family.path = fam.value("path", std::string{});
    c.n = j.at("n").get<std::int64_t>();
    c.q0 = j.at("q0").get<double>();
    c.method = j.at("method").get<std::string>();
    c.trials = j.value("trials", 1);
    c.base_seed = j.value("base_seed", std::uint64_t{0});
    if (j.contains("params")) {
        const auto& p = j["params"];
        c.params.delta = p.value("delta", c.params.delta);
        c.params.eps = p.value("eps", c.params.eps);
        c.params.tol = p.value("tol", c.params.tol);
        c.params.max_iter = p.value("max_iter", c.params.max_iter);
        c.params.slack_frac = p.value("slack_frac", c.params.slack_frac);
        c.params.identify_k = p.value("identify_k", c.params.identify_k);
        c.params.refine_eps = p.value("refine_eps", c.params.refine_eps);
        c.params.budget = p.value("budget", c.params.budget);
        c.params.wall_budget_ms = p.value("wall_budget_ms", c.params.wall_budget_ms);
    }
    return c;
}

std::string config_hash(const ExperimentConfig& c) {
    const std::string canon = config_to_json(c).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& r, bool include_timing) {
    nlohmann::ordered_json j;
    j["version"] = r.version;
    j["config"] = config_to_json(r.config);
    j["config_hash"] = r.config_hash;
    auto& trials = j["trials"] = nlohmann::ordered_json::array();
    for (const TrialRecord& t : r.trials) {
        nlohmann::ordered_json tj;
        tj["trial"] = t.index;
        tj["seed"] = t.seed;
        tj["hypothesis"] = t.hypothesis;
        tj["statistic"] = t.statistic;
        tj["decision"] = t.decision ? 1 : 0;
        if (include_timing) {
            tj["wall_ms"] = t.wall_ms;
            tj["over_budget"] = t.over_budget;
        }
        if (t.failed) tj["error"] = t.error;
        if (t.precision >= 0.0) {
            tj["precision"] = t.precision;
            tj["recall"] = t.recall;
            tj["exact_recovery"] = t.exact_recovery ? 1 : 0;
        }
        trials.push_back(std::move(tj));
    }
    nlohmann::ordered_json agg;
    agg["fpr"] = r.fpr;
    agg["fnr"] = r.fnr;
    agg["risk"] = r.risk;
    agg["failed_trials"] = r.failed_trials;
    if (r.precision_mean >= 0.0) {
        agg["precision_mean"] = r.precision_mean;
        agg["recall_mean"] = r.recall_mean;
        agg["exact_recovery_rate"] = r.exact_recovery_rate;
    }
    j["aggregates"] = std::move(agg);
    return j;
}

std::string report_to_csv(const std::vector<ExperimentReport>& reports, bool include_timing) {
    std::ostringstream os;
    os << "family,family_k,family_m,n,q0,sigma_q0,method,config_hash,trial,seed,hypothesis,"
          "statistic,decision,precision,recall";
    if (include_timing) os << ",wall_ms";
    os << '\n';
    os.precision(17);
    for (const ExperimentReport& r : reports) {
        const double sig = std::sqrt(r.config.q0 / (1.0 - r.config.q0));
        for (const TrialRecord& t : r.trials) {
            os << r.config.family.name << ',' << r.config.family.k << ',' << r.config.family.m
               << ',' << r.config.n << ',' << r.config.q0 << ',' << sig << ','
               << r.config.method << ',' << r.config_hash << ',' << t.index << ',' << t.seed
               << ',' << t.hypothesis << ',' << t.statistic << ',' << (t.decision ? 1 : 0) << ','
               << t.precision << ',' << t.recall;
            if (include_timing) os << ',' << t.wall_ms;
            os << '\n';
        }
    }
    return os.str();
}

}  // namespace planted
