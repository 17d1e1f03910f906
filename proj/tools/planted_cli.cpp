#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "planted/certificate.hpp"
#include "planted/embeddings.hpp"
#include "planted/experiment.hpp"
#include "planted/graph_io.hpp"
#include "planted/json_out.hpp"
#include "planted/sampler.hpp"
#include "planted/sdp.hpp"
#include "planted/spectral.hpp"
#include "planted/stat_limits.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadConfig = 2;
constexpr int kExitMethodFailure = 3;

struct FamilyFlags {
    std::string family;
    int k = 0, m = 0, d = 0, r = 0;
    std::string file;

    void attach(CLI::App* cmd, bool required, bool with_k = true) {
        auto* opt = cmd->add_option("--family", family,
                                    "subgraph family: clique|hypercube|tree|cycle_power|path|file");
        if (required) opt->required();
        if (with_k) cmd->add_option("--k", k, "clique size / cycle length / path length");
        cmd->add_option("--m", m, "hypercube dimension / cycle power");
        cmd->add_option("--d", d, "tree degree");
        cmd->add_option("--r", r, "tree generations");
        cmd->add_option("--subgraph-file", file, "graph file for --family file");
    }

    planted::FamilySpec spec() const { return {family, k, m, d, r, file}; }
};

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write: " + out_path);
        out << text << '\n';
    }
}

planted::Graph input_graph(const std::string& in_path, std::int64_t n, double q0,
                           std::uint64_t seed, const FamilyFlags& fam, bool planted_draw) {
    if (!in_path.empty()) return planted::load_graph_file(in_path);
    if (n <= 0) throw std::invalid_argument("need --in FILE or --n to generate an instance");
    if (planted_draw) {
        planted::Graph h = planted::make_family(fam.spec());
        return planted::plant(static_cast<int>(n), q0, h, seed).graph;
    }
    return planted::er_sample(static_cast<int>(n), q0, seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"planted-subgraph detection toolkit"};
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "sample a null or planted instance");
    FamilyFlags gen_fam;
    gen_fam.attach(gen, false);
    std::int64_t gen_n = 0;
    double gen_q0 = 0.0;
    std::uint64_t gen_seed = 0;
    bool gen_planted = false, gen_family_only = false;
    std::string gen_out, gen_format = "json";
    gen->add_option("--n", gen_n, "host vertex count");
    gen->add_option("--q0", gen_q0, "edge probability");
    gen->add_option("--seed", gen_seed, "sampler seed");
    gen->add_flag("--planted", gen_planted, "plant the family subgraph");
    gen->add_flag("--family-only", gen_family_only, "emit the family graph itself");
    gen->add_option("--out", gen_out, "output file (default stdout)");
    gen->add_option("--format", gen_format, "json|edgelist")
        ->check(CLI::IsMember({"json", "edgelist"}));

    // ---- thresholds ----
    auto* thr = app.add_subcommand("thresholds", "regime and second-moment reports");
    FamilyFlags thr_fam;
    thr_fam.attach(thr, true);
    std::int64_t thr_n = 0;
    double thr_q0 = 0.0;
    std::string thr_out;
    thr->add_option("--n", thr_n, "host vertex count")->required();
    thr->add_option("--q0", thr_q0, "edge probability")->required();
    thr->add_option("--out", thr_out, "output file (default stdout)");

    // ---- detect ----
    auto* det = app.add_subcommand("detect", "run a detection test");
    FamilyFlags det_fam;
    det_fam.attach(det, false);
    std::string det_method, det_in, det_out;
    std::int64_t det_n = 0;
    double det_q0 = 0.0;
    std::uint64_t det_seed = 0;
    bool det_planted = false;
    double det_tol = 1e-6;
    int det_iters = 10000;
    det->add_option("--method", det_method, "spectral|sdp|exhaustive")
        ->required()
        ->check(CLI::IsMember({"spectral", "sdp", "exhaustive"}));
    det->add_option("--in", det_in, "input graph file");
    det->add_option("--n", det_n, "generate: host vertex count");
    det->add_option("--q0", det_q0, "edge probability")->required();
    det->add_option("--seed", det_seed, "generate: seed");
    det->add_flag("--planted", det_planted, "generate: plant the family subgraph");
    det->add_option("--tol", det_tol, "solver tolerance");
    det->add_option("--max-iter", det_iters, "solver iteration cap");
    std::string det_dump;
    det->add_option("--dump-y", det_dump, "sdp only: write the solution matrix as dense binary");
    det->add_option("--out", det_out, "output file (default stdout)");

    // ---- identify ----
    auto* ide = app.add_subcommand("identify", "spectral identification of the hidden set");
    FamilyFlags ide_fam;
    ide_fam.attach(ide, false, /*with_k=*/false);  // --k below doubles as the family size
    std::string ide_in, ide_out;
    std::int64_t ide_n = 0;
    int ide_k = 0;
    double ide_q0 = 0.0, ide_refine = -1.0, ide_tol = 1e-8;
    std::uint64_t ide_seed = 0;
    bool ide_planted = false, ide_scores = true;
    ide->add_option("--k", ide_k, "hidden subgraph size")->required();
    ide->add_option("--q0", ide_q0, "edge probability")->required();
    ide->add_option("--in", ide_in, "input graph file");
    ide->add_option("--n", ide_n, "generate: host vertex count");
    ide->add_option("--seed", ide_seed, "generate: seed");
    ide->add_flag("--planted", ide_planted, "generate: plant the family subgraph");
    ide->add_option("--refine-eps", ide_refine, "low-degree refinement epsilon (>=0 enables)");
    ide->add_option("--tol", ide_tol, "eigensolver tolerance");
    ide->add_flag("--no-per-vertex", [&ide_scores](std::int64_t) { ide_scores = false; }, "omit per-vertex scores");
    ide->add_option("--out", ide_out, "output file (default stdout)");

    // ---- certificate ----
    auto* crt = app.add_subcommand("certificate", "null-model feasibility certificate");
    FamilyFlags crt_fam;
    crt_fam.attach(crt, true);
    std::string crt_in, crt_out, crt_dump;
    std::int64_t crt_n = 0;
    double crt_q0 = -1.0;
    std::uint64_t crt_seed = 0;
    crt->add_option("--in", crt_in, "input graph file");
    crt->add_option("--n", crt_n, "generate: host vertex count");
    crt->add_option("--q0", crt_q0, "edge probability (enables regime ratios)");
    crt->add_option("--seed", crt_seed, "generate: seed");
    crt->add_option("--dump-y", crt_dump, "write Y as dense binary");
    crt->add_option("--out", crt_out, "output file (default stdout)");

    // ---- experiment / sweep ----
    auto add_experiment_flags = [](CLI::App* cmd, std::string& config, std::string& out,
                                   std::string& format, bool& timing) {
        cmd->add_option("--config", config, "experiment config JSON")->required();
        cmd->add_option("--out", out, "output file (default stdout)");
        cmd->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_flag("--timing", timing, "include wall-clock timings in output");
    };
    auto* exp = app.add_subcommand("experiment", "Monte Carlo experiment from a config file");
    std::string exp_config, exp_out, exp_format = "json";
    bool exp_timing = false;
    add_experiment_flags(exp, exp_config, exp_out, exp_format, exp_timing);
    std::optional<std::int64_t> exp_n;
    std::optional<double> exp_q0;
    std::optional<int> exp_trials;
    std::optional<std::uint64_t> exp_seed;
    std::optional<std::string> exp_method;
    exp->add_option("--n", exp_n, "override config n");
    exp->add_option("--q0", exp_q0, "override config q0");
    exp->add_option("--trials", exp_trials, "override config trials");
    exp->add_option("--seed", exp_seed, "override config base_seed");
    exp->add_option("--method", exp_method, "override config method");

    auto* swp = app.add_subcommand("sweep", "cartesian grid of experiments");
    std::string swp_config, swp_out, swp_format = "csv";
    bool swp_timing = false;
    add_experiment_flags(swp, swp_config, swp_out, swp_format, swp_timing);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadConfig;
    }

    try {
        if (gen->parsed()) {
            if (gen_family_only) {
                planted::Graph h = planted::make_family(gen_fam.spec());
                emit(gen_out, gen_format == "json" ? planted::graph_to_json(h).dump(2)
                                                   : planted::to_edge_list(h));
            } else if (gen_planted) {
                planted::Graph h = planted::make_family(gen_fam.spec());
                planted::PlantedInstance inst =
                    planted::plant(static_cast<int>(gen_n), gen_q0, h, gen_seed);
                nlohmann::ordered_json j;
                j["n"] = inst.n;
                j["q0"] = inst.q0;
                j["seed"] = inst.seed;
                j["subgraph"] = planted::graph_to_json(inst.subgraph);
                j["hidden"] = inst.hidden.targets;
                j["graph"] = planted::graph_to_json(inst.graph);
                emit(gen_out, j.dump(2));
            } else {
                planted::Graph g =
                    planted::er_sample(static_cast<int>(gen_n), gen_q0, gen_seed);
                emit(gen_out, gen_format == "json" ? planted::graph_to_json(g).dump(2)
                                                   : planted::to_edge_list(g));
            }
            return kExitOk;
        }

        if (thr->parsed()) {
            planted::Graph h = planted::make_family(thr_fam.spec());
            nlohmann::ordered_json j;
            j["regime"] = planted::regime_to_json(planted::regime_report(h, thr_n, thr_q0));
            j["second_moment"] =
                planted::second_moment_to_json(planted::second_moment_report(h, thr_n, thr_q0));
            emit(thr_out, j.dump(2));
            return kExitOk;
        }

        if (det->parsed()) {
            planted::Graph g = input_graph(det_in, det_n, det_q0, det_seed, det_fam, det_planted);
            if (det_method == "sdp") {
                planted::Graph h = planted::make_family(det_fam.spec());
                planted::SdpParams params;
                params.tol = det_tol;
                params.max_iter = det_iters;
                planted::SdpSolution sol = planted::sdp_solve(g, h, params);
                const double target = 2.0 * static_cast<double>(h.edge_count());
                const double slack = params.slack_frac * target;
                nlohmann::ordered_json j;
                j["value"] = sol.objective;
                j["threshold"] = target - slack;
                j["slack"] = slack;
                j["residuals"] = planted::residuals_to_json(sol.residuals);
                j["iterations"] = sol.iterations;
                j["converged"] = sol.converged;
                j["decision"] = sol.objective >= target - slack ? 1 : 0;
                if (!det_dump.empty())
                    planted::write_matrix_binary(det_dump, sol.Y, g.vertex_count(),
                                                 h.vertex_count());
                emit(det_out, j.dump(2));
                return kExitOk;
            }
            planted::TestOutcome outcome;
            if (det_method == "spectral") {
                outcome = planted::spectral_test(g, det_q0, {det_tol, det_iters, 0});
            } else {
                outcome = planted::exhaustive_test(g, planted::make_family(det_fam.spec()),
                                                   det_q0);
            }
            emit(det_out, planted::outcome_to_json(outcome).dump(2));
            return kExitOk;
        }

        if (ide->parsed()) {
            if (ide_fam.k == 0) ide_fam.k = ide_k;
            planted::Graph g = input_graph(ide_in, ide_n, ide_q0, ide_seed, ide_fam, ide_planted);
            planted::IdentifyOptions opts;
            opts.tol = ide_tol;
            if (ide_refine >= 0.0) opts.refine_eps = ide_refine;
            planted::IdentificationResult res = planted::identify(g, ide_q0, ide_k, opts);
            emit(ide_out, planted::identification_to_json(res, ide_scores).dump(2));
            return kExitOk;
        }

        if (crt->parsed()) {
            if (crt_in.empty() && crt_q0 < 0.0)
                throw std::invalid_argument("certificate: need --q0 to generate a null instance");
            planted::Graph g = input_graph(crt_in, crt_n, crt_q0 < 0 ? 0.0 : crt_q0, crt_seed,
                                           crt_fam, false);
            planted::Graph h = planted::make_family(crt_fam.spec());
            planted::CertificateOptions opts;
            opts.q0 = crt_q0;
            planted::NullCertificate cert = planted::null_certificate(g, h, opts);
            if (!crt_dump.empty())
                planted::write_matrix_binary(crt_dump, cert.Y, g.vertex_count(),
                                             h.vertex_count());
            emit(crt_out, planted::certificate_to_json(cert).dump(2));
            return kExitOk;
        }

        if (exp->parsed() || swp->parsed()) {
            const std::string& path = exp->parsed() ? exp_config : swp_config;
            std::ifstream in(path);
            if (!in) throw std::invalid_argument("cannot open config: " + path);
            nlohmann::json doc;
            in >> doc;
            planted::ExperimentConfig cfg = planted::config_from_json(doc);
            if (exp->parsed()) {
                if (exp_n) cfg.n = *exp_n;
                if (exp_q0) cfg.q0 = *exp_q0;
                if (exp_trials) cfg.trials = *exp_trials;
                if (exp_seed) cfg.base_seed = *exp_seed;
                if (exp_method) cfg.method = *exp_method;
                planted::ExperimentReport rep = planted::run_experiment(cfg);
                if (exp_format == "csv") {
                    emit(exp_out, planted::report_to_csv({rep}, exp_timing));
                } else {
                    emit(exp_out, planted::report_to_json(rep, exp_timing).dump(2));
                }
            } else {
                std::map<std::string, std::vector<double>> grid;
                if (doc.contains("sweep")) {
                    for (const auto& [key, values] : doc["sweep"].items())
                        grid[key] = values.get<std::vector<double>>();
                }
                std::vector<planted::ExperimentReport> reports = planted::sweep(cfg, grid);
                if (swp_format == "json") {
                    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                    for (const auto& r : reports)
                        arr.push_back(planted::report_to_json(r, swp_timing));
                    emit(swp_out, arr.dump(2));
                } else {
                    emit(swp_out, planted::report_to_csv(reports, swp_timing));
                }
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitBadConfig;
    } catch (const std::exception& e) {
        std::cerr << "method failure: " << e.what() << '\n';
        return kExitMethodFailure;
    }
    return kExitOk;
}
