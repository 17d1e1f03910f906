// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failing criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "planted/certificate.hpp"
#include "planted/density.hpp"
#include "planted/embeddings.hpp"
#include "planted/experiment.hpp"
#include "planted/qap.hpp"
#include "planted/sampler.hpp"
#include "planted/sdp.hpp"
#include "planted/spectral.hpp"
#include "planted/stat_limits.hpp"

using namespace planted;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto [passed, text] = body();
        ok = passed;
        detail = text;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %2d: %s (%s) [%.1f s]\n", ok ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string frac(int got, int total) {
    return std::to_string(got) + "/" + std::to_string(total);
}

}  // namespace

int main() {
    // 1. Null spectral concentration at n = 2000, q0 = 0.5.
    run_criterion(1, "null spectral concentration", [] {
        const int n = 2000, seeds = 100;
        const double q0 = 0.5;
        const double scale = sigma(q0) * std::sqrt(static_cast<double>(n));
        int inside = 0;
        for (int s = 0; s < seeds; ++s) {
            TestOutcome t = spectral_test(er_sample(n, q0, 100 + s), q0, {5e-2, 20000, 0});
            const double ratio = t.statistic / scale;
            if (ratio >= 1.85 && ratio <= 2.15) ++inside;
        }
        return std::make_pair(inside >= 95, frac(inside, seeds) + " ratios in [1.85,2.15]");
    });

    // 2. Spectral detection error rates on planted cliques.
    run_criterion(2, "spectral detection FPR/FNR", [] {
        ExperimentConfig cfg;
        const int n = 2000;
        const double q0 = 0.1;
        const int k = static_cast<int>(std::ceil(3.2 * sigma(q0) * std::sqrt(double(n))));
        cfg.family = {"clique", k, 0, 0, 0, ""};
        cfg.n = n;
        cfg.q0 = q0;
        cfg.method = "spectral";
        cfg.trials = 100;
        cfg.base_seed = 2024;
        cfg.params.tol = 5e-2;
        ExperimentReport rep = run_experiment(cfg);
        const bool ok = rep.fpr <= 0.05 && rep.fnr <= 0.05 && rep.failed_trials == 0;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "k=%d FPR=%.3f FNR=%.3f", k, rep.fpr, rep.fnr);
        return std::make_pair(ok, std::string(buf));
    });

    // 3. Spectral identification recovers the planted clique exactly.
    run_criterion(3, "spectral identification", [] {
        const int n = 2000, trials = 50;
        const double q0 = 0.1;
        const int k = static_cast<int>(std::ceil(10.0 * sigma(q0) * std::sqrt(double(n))));
        Graph h = clique(k);
        IdentifyOptions opts;
        opts.tol = 1e-6;
        int exact = 0, clean = 0;
        for (int s = 0; s < trials; ++s) {
            PlantedInstance inst = plant(n, q0, h, 3000 + s);
            IdentificationResult res = identify(inst.graph, q0, k, opts);
            std::vector<int> truth = inst.hidden.targets;
            std::sort(truth.begin(), truth.end());
            if (res.selected == truth) ++exact;
            bool subset = true;
            for (int v : res.selected)
                subset &= std::binary_search(truth.begin(), truth.end(), v);
            if (subset) ++clean;
        }
        const bool ok = exact >= 45 && clean >= 48;
        return std::make_pair(ok, "exact " + frac(exact, trials) + ", no-false-vertex " +
                                      frac(clean, trials));
    });

    // 4. Embedding counter against the all-labelings oracle.
    run_criterion(4, "counting oracle equivalence", [] {
        int agree = 0;
        const int cases = 200;
        for (int s = 0; s < cases; ++s) {
            const int vh = 2 + s % 4;                // up to 5 vertices
            const int vg = std::max(4 + s % 5, vh);  // up to 8 vertices
            Graph h = er_sample(vh, 0.5 + 0.1 * (s % 4), 40000 + s);
            Graph g = er_sample(vg, 0.4 + 0.07 * (s % 6), 41000 + s);
            if (count_embeddings(h, g).count == oracles::count_embeddings_all_labelings(h, g))
                ++agree;
        }
        return std::make_pair(agree == cases, frac(agree, cases) + " exact matches");
    });

    // 5. Likelihood ratio has null mean 1.
    run_criterion(5, "likelihood-ratio null mean", [] {
        const int n = 8, seeds = 10000;
        const double q0 = 0.5;
        Graph h = clique(3);
        double acc = 0.0, acc2 = 0.0;
        for (int s = 0; s < seeds; ++s) {
            const double r = likelihood_ratio(er_sample(n, q0, 50000 + s), h, q0).ratio;
            acc += r;
            acc2 += r * r;
        }
        const double mean = acc / seeds;
        const double se = std::sqrt((acc2 / seeds - mean * mean) / seeds);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "mean=%.4f se=%.4f", mean, se);
        return std::make_pair(std::abs(mean - 1.0) <= 4.0 * se, std::string(buf));
    });

    // 6. Density: flow vs subset enumeration, plus family closed forms.
    run_criterion(6, "density oracle equivalence", [] {
        int agree = 0, total = 0;
        for (int s = 0; total < 200; ++s) {
            const int n = 4 + s % 9;  // up to 12 vertices
            Graph g = er_sample(n, 0.2 + 0.05 * (s % 10), 60000 + s);
            if (g.edge_count() == 0) continue;
            ++total;
            DensityWitness flow = max_density(g);
            DensityWitness brute = max_density_exhaustive(g);
            if (flow.value == brute.value && flow.witness.size() == brute.witness.size())
                ++agree;
        }
        bool families = true;
        for (int k : {3, 5, 8}) families &= max_density(clique(k)).value == Rational(k - 1, 2);
        for (auto [d, r] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {3, 3}}) {
            Graph t = regular_tree(d, r);
            families &=
                max_density(t).value == Rational(t.vertex_count() - 1, t.vertex_count());
        }
        for (auto [k, m] : std::vector<std::pair<int, int>>{{10, 2}, {13, 3}, {9, 4}})
            families &= max_density(cycle_power(k, m)).value == Rational(m, 1);
        for (int m : {2, 3, 4}) families &= max_density(hypercube(m)).value == Rational(m, 2);
        return std::make_pair(agree == total && families,
                              frac(agree, total) + " random graphs, families " +
                                  std::string(families ? "exact" : "mismatch"));
    });

    // 7. SDP dominance over the exact assignment optimum; integral lifts.
    run_criterion(7, "sdp dominance and lift consistency", [] {
        int dominated = 0, lifted = 0, total = 0;
        for (int s = 0; total < 20; ++s) {
            const int n = 6 + s % 3, k = 3 + s % 2;
            Graph g = er_sample(n, 0.5, 70000 + s);
            Graph h = er_sample(k, 0.8, 71000 + s);
            if (h.edge_count() == 0) continue;
            ++total;
            QapResult opt = qap_brute_force(g, h);
            SdpSolution sol = sdp_solve(g, h);
            if (sol.objective >= static_cast<double>(opt.opt) - 1e-4) ++dominated;
            Eigen::MatrixXd y = lift_assignment(opt.argmax, n, k);
            SdpResiduals r = constraint_residuals(y, n, k);
            const bool zero = r.psd <= 1e-9 && r.box <= 1e-12 && r.total_sum <= 1e-9 &&
                              r.row_traces <= 1e-9 && r.col_traces <= 1e-9;
            const double obj = kron_adjacency_objective(g, h, y);
            if (zero && std::abs(obj - static_cast<double>(opt.opt)) <= 1e-9) ++lifted;
        }
        return std::make_pair(dominated == total && lifted == total,
                              "dominance " + frac(dominated, total) + ", lifts " +
                                  frac(lifted, total));
    });

    // 8. Feasibility certificate under the null, exhibiting the SDP gap.
    run_criterion(8, "null-model certificate", [] {
        const int n = 300, seeds = 20;
        const double q0 = 0.5;
        Graph h = path_graph(5);
        CertificateOptions opts;
        opts.q0 = q0;
        int good = 0, exact = 0;
        for (int s = 0; s < seeds; ++s) {
            Graph g = er_sample(n, q0, 80000 + s);
            NullCertificate cert = null_certificate(g, h, opts);
            const SdpResiduals& r = cert.residuals;
            const bool feasible = r.box <= 1e-5 && r.total_sum <= 1e-5 &&
                                  r.row_traces <= 1e-5 && r.col_traces <= 1e-5 &&
                                  r.psd <= 1e-8;
            // A feasible certificate at this objective lower-bounds the
            // relaxation value, so the sdp test fires under the null.
            if (feasible && cert.objective >= 2.0 * h.edge_count() - 1e-9) ++good;
            if (cert.total_sum_exact && cert.row_traces_exact) ++exact;
        }
        return std::make_pair(good >= 18 && exact == seeds,
                              frac(good, seeds) + " feasible with objective >= 2e(H)");
    });

    // 9. Second-moment pair sum: closed form vs exhaustive enumeration.
    run_criterion(9, "second-moment diagnostic", [] {
        const int n = 20;
        const double q0 = 0.5;
        Graph h = clique(3);
        const double brute = oracles::delta_bar_brute(h, n, q0);
        const double closed = std::exp(log_delta_bar_closed_form(h, n, q0));
        const double rel = std::abs(closed - brute) / brute;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "closed=%.6f brute=%.6f rel=%.2e", closed, brute, rel);
        return std::make_pair(rel <= 1e-9, std::string(buf));
    });

    // 10. Laplacian spectrum of the null model. Note: lambda_2(L) is capped
    // by the minimum degree, whose downward fluctuation at n=1000 is
    // sqrt(2 np(1-p) log n) ~ 54, well beyond the 2 sqrt(np(1-p)) ~ 29 the
    // window is built from; empirically ~12% of seeds land below 0.9, so
    // this window is tight at this n and the criterion can fail.
    run_criterion(10, "laplacian spectrum check", [] {
        const int n = 1000, seeds = 50;
        const double p = 0.3;
        int inside = 0, kernel = 0;
        for (int s = 0; s < seeds; ++s) {
            LaplacianReport rep = laplacian_spectrum_check(er_sample(n, p, 85000 + s), p);
            if (rep.ratio >= 0.9 && rep.ratio <= 1.1) ++inside;
            if (rep.kernel_exact) ++kernel;
        }
        return std::make_pair(inside >= 45 && kernel == seeds,
                              frac(inside, seeds) + " ratios in [0.9,1.1], kernel exact " +
                                  frac(kernel, seeds));
    });

    // 11. Byte-identical experiment reruns.
    run_criterion(11, "experiment determinism", [] {
        ExperimentConfig cfg;
        cfg.family = {"clique", 40, 0, 0, 0, ""};
        cfg.n = 500;
        cfg.q0 = 0.2;
        cfg.method = "spectral";
        cfg.trials = 3;
        cfg.base_seed = 314159;
        cfg.params.tol = 1e-3;
        const std::string a = report_to_json(run_experiment(cfg)).dump(2);
        const std::string b = report_to_json(run_experiment(cfg)).dump(2);
        const std::string csv_a = report_to_csv({run_experiment(cfg)});
        const std::string csv_b = report_to_csv({run_experiment(cfg)});
        return std::make_pair(a == b && csv_a == csv_b,
                              a == b ? std::string("reports byte-identical")
                                     : std::string("reports differ"));
    });

    std::printf("%d/11 criteria passed\n", 11 - g_failures);
    return g_failures;
}
