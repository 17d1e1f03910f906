#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "planted/certificate.hpp"
#include "planted/json_out.hpp"
#include "planted/qap.hpp"
#include "planted/rng.hpp"
#include "planted/sampler.hpp"
#include "planted/sdp.hpp"

using namespace planted;

namespace {

Embedding random_embedding(int k, int n, std::uint64_t seed) {
    CounterRng rng(seed, 77);
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i + 1;
    Embedding phi;
    phi.targets.resize(k);
    for (int i = 0; i < k; ++i) {
        std::uint64_t j = i + rng.next_below(n - i);
        std::swap(pool[i], pool[j]);
        phi.targets[i] = pool[i];
    }
    return phi;
}

// Trace form Tr(A_H Pi^T A_G Pi) evaluated with dense matrices.
double qap_trace_form(const Graph& g, const Graph& h, const Embedding& phi) {
    const int n = g.vertex_count(), k = h.vertex_count();
    Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(n, k);
    for (int i = 1; i <= k; ++i) pi(phi.targets[i - 1] - 1, i - 1) = 1.0;
    return (h.adjacency_matrix() * pi.transpose() * g.adjacency_matrix() * pi).trace();
}

}  // namespace

TEST_CASE("qap objective closed forms and the two displayed forms agree") {
    Embedding id3{{1, 2, 3}};
    CHECK(qap_objective(clique(3), clique(3), id3) == 6);
    CHECK(qap_objective(empty_graph(4), clique(2), Embedding{{1, 2}}) == 0);
    CHECK_THROWS_AS(qap_objective(clique(3), clique(3), Embedding{{1, 1, 2}}),
                    std::invalid_argument);

    for (int s = 0; s < 100; ++s) {
        Graph g = er_sample(9, 0.45, 6000 + s);
        Graph h = er_sample(4, 0.6, 6500 + s);
        Embedding phi = random_embedding(4, 9, s);
        const std::int64_t obj = qap_objective(g, h, phi);
        CHECK(obj % 2 == 0);
        CHECK(obj >= 0);
        CHECK(obj <= 2 * h.edge_count());
        CHECK(static_cast<double>(obj) == doctest::Approx(qap_trace_form(g, h, phi)));
    }
}

TEST_CASE("qap brute force") {
    // noiseless planted copy reaches 2 e(H)
    Graph h = clique(4);
    PlantedInstance inst = plant(9, 0.0, h, 17);
    QapResult r = qap_brute_force(inst.graph, h);
    CHECK_FALSE(r.budget_exceeded);
    CHECK(r.opt == 2 * h.edge_count());
    CHECK(qap_objective(inst.graph, h, r.argmax) == r.opt);

    // triangle against the 4-cycle: best embedding hits 2 of 3 edges
    CHECK(qap_brute_force(cycle_power(4, 1), clique(3)).opt == 4);

    // single edge: 2 iff the host has any edge
    Graph host = er_sample(6, 0.3, 5);
    CHECK(qap_brute_force(host, clique(2)).opt == (host.edge_count() > 0 ? 2 : 0));
    CHECK(qap_brute_force(empty_graph(5), clique(2)).opt == 0);

    QapResult tiny = qap_brute_force(clique(12), clique(6), {100});
    CHECK(tiny.budget_exceeded);
}

TEST_CASE("lift of an assignment satisfies every constraint with zero residual") {
    {
        Eigen::MatrixXd y = lift_assignment(Embedding{{1}}, 2, 1);
        CHECK(y(0, 0) == 1.0);
        CHECK(y.sum() == 1.0);
    }
    for (int s = 0; s < 20; ++s) {
        const int n = 5 + s % 3, k = 2 + s % 3;
        Graph g = er_sample(n, 0.5, 7000 + s);
        Graph h = er_sample(k, 0.7, 7500 + s);
        Embedding phi = random_embedding(k, n, 40 + s);
        Eigen::MatrixXd y = lift_assignment(phi, n, k);
        SdpResiduals r = constraint_residuals(y, n, k);
        CHECK(r.psd <= 1e-12);
        CHECK(r.box == 0.0);
        CHECK(r.total_sum <= 1e-12);
        CHECK(r.row_traces <= 1e-12);
        CHECK(r.col_traces <= 1e-12);
        CHECK(kron_adjacency_objective(g, h, y) ==
              doctest::Approx(static_cast<double>(qap_objective(g, h, phi))).epsilon(1e-12));
    }
}

TEST_CASE("kron helper matches a materialized product") {
    Graph g = er_sample(5, 0.5, 1);
    Graph h = er_sample(3, 0.7, 2);
    const int n = 5, k = 3;
    Eigen::MatrixXd implicit = Eigen::MatrixXd::Zero(n * k, n * k);
    add_kron_adjacency(implicit, g, h, 1.0);
    Eigen::MatrixXd ag = g.adjacency_matrix(), ah = h.adjacency_matrix();
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n * k, n * k);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int p = 0; p < k; ++p)
                for (int q = 0; q < k; ++q)
                    dense(a * k + p, b * k + q) = ag(a, b) * ah(p, q);
    CHECK((implicit - dense).norm() == 0.0);
}

TEST_CASE("sdp relaxation dominates the assignment optimum") {
    {
        SdpSolution sol = sdp_solve(clique(6), clique(3));
        CHECK(sol.converged);
        CHECK(sol.objective >= 6.0 - 1e-4);
        CHECK(sol.objective <= 6.0 * 1.05);
    }
    {
        SdpSolution sol = sdp_solve(empty_graph(6), clique(3));
        CHECK(sol.objective == doctest::Approx(0.0).epsilon(1e-9));
    }
    for (int s = 0; s < 6; ++s) {
        const int n = 6 + s % 3, k = 3 + s % 2;
        Graph g = er_sample(n, 0.5, 8000 + s);
        Graph h = er_sample(k, 0.8, 8500 + s);
        if (h.edge_count() == 0) continue;
        QapResult opt = qap_brute_force(g, h);
        SdpSolution sol = sdp_solve(g, h);
        CHECK(sol.objective >= static_cast<double>(opt.opt) - 1e-4);
    }
}

TEST_CASE("sdp solve is deterministic and relabeling invariant") {
    Graph g = er_sample(7, 0.5, 12);
    Graph h = clique(3);
    SdpSolution a = sdp_solve(g, h);
    SdpSolution b = sdp_solve(g, h);
    CHECK(a.objective == b.objective);
    CHECK((a.Y - b.Y).norm() == 0.0);
    CHECK(a.iterations == b.iterations);

    // relabel G by the cycle shift v -> v%7+1
    std::vector<std::pair<int, int>> rel;
    for (auto [x, y] : g.edges()) rel.emplace_back(x % 7 + 1, y % 7 + 1);
    SdpSolution c = sdp_solve(Graph(7, std::move(rel)), h);
    CHECK(c.objective == doctest::Approx(a.objective).epsilon(5e-4));
}

TEST_CASE("sdp test fires on planted instances") {
    Graph h = clique(3);
    PlantedInstance inst = plant(7, 0.0, h, 23);
    TestOutcome t = sdp_test(inst.graph, h);
    CHECK(t.decision);

    Graph edge_host = er_sample(6, 0.4, 77);
    REQUIRE(edge_host.edge_count() > 0);
    CHECK(sdp_test(edge_host, clique(2)).decision);
}

TEST_CASE("sdp test fires under the null in the gap regime") {
    // smallest scale where lambda_1(A_H) < sigma(q0) sqrt(n)/4 for the
    // 5-vertex path: the relaxation reaches 2 e(H) on pure noise.
    Graph h = path_graph(5);
    Graph g = er_sample(50, 0.5, 321);
    SdpParams params;
    params.tol = 1e-4;
    params.max_iter = 3000;
    TestOutcome t = sdp_test(g, h, params);
    CHECK(t.decision);
    CHECK(t.statistic >= 2.0 * h.edge_count());
}

TEST_CASE("null certificate case one on a path subgraph") {
    Graph h = path_graph(5);
    Graph g = er_sample(60, 0.5, 42);
    CertificateOptions opts;
    opts.q0 = 0.5;
    NullCertificate cert = null_certificate(g, h, opts);
    CHECK(cert.case_one);
    CHECK(cert.total_sum_exact);
    CHECK(cert.row_traces_exact);
    CHECK(cert.b == doctest::Approx(1.0 / (2.0 * g.edge_count())).epsilon(1e-15));
    CHECK(cert.residuals.total_sum <= 1e-9);
    CHECK(cert.residuals.row_traces <= 1e-9);
    CHECK(cert.residuals.box == 0.0);
    CHECK(cert.residuals.col_traces <= 1e-9);
    // positive-part inactive here
    CHECK_FALSE(cert.u_clipped);
    CHECK(std::isfinite(cert.ratio_stated));
}

TEST_CASE("null certificate case two branch") {
    // K4 minus an edge: lambda_min = (1-sqrt(17))/2 ~ -1.5616 < (2e-k^2)/k = -1.5
    Graph diamond(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}});
    Graph g = er_sample(40, 0.5, 55);
    NullCertificate cert = null_certificate(g, diamond);
    CHECK_FALSE(cert.case_one);
    CHECK(cert.lambda_k_h == doctest::Approx((1.0 - std::sqrt(17.0)) / 2.0).epsilon(1e-9));
    CHECK(cert.total_sum_exact);
    CHECK(cert.row_traces_exact);
    CHECK(cert.residuals.total_sum <= 1e-9);
    CHECK(cert.residuals.row_traces <= 1e-9);
    CHECK(cert.residuals.box == 0.0);
    // objective is exactly 2 e(H) in this branch
    CHECK(cert.objective == doctest::Approx(2.0 * diamond.edge_count()).epsilon(1e-9));
}

TEST_CASE("null certificate feasible under the null at reduced scale") {
    Graph h = path_graph(5);
    int feasible = 0;
    for (int s = 0; s < 5; ++s) {
        Graph g = er_sample(100, 0.5, 90000 + s);
        NullCertificate cert = null_certificate(g, h);
        if (cert.feasible && cert.objective >= 2.0 * h.edge_count() - 1e-9) ++feasible;
    }
    CHECK(feasible >= 4);
}

TEST_CASE("certificate rejects hosts without edges") {
    CHECK_THROWS_AS(null_certificate(empty_graph(5), path_graph(3)), std::invalid_argument);
}

TEST_CASE("matrix dump round trips bit exact") {
    Graph h = path_graph(3);
    Graph g = er_sample(10, 0.4, 2024);
    NullCertificate cert = null_certificate(g, h);
    const std::string path = "/tmp/planted_y_dump_test.bin";
    write_matrix_binary(path, cert.Y, 10, 3);
    MatrixDump dump = read_matrix_binary(path);
    CHECK(dump.n == 10);
    CHECK(dump.k == 3);
    CHECK(dump.matrix == cert.Y);
    std::remove(path.c_str());
}

TEST_CASE("laplacian checks") {
    {
        LaplacianReport rep = laplacian_spectrum_check(clique(12), 0.5);
        CHECK(rep.kernel_exact);
        CHECK(rep.psd_ok);
        CHECK(rep.lambda_2 == doctest::Approx(12.0).epsilon(1e-9));
    }
    // the asymptotic window tightens with n; at n=300 the correction term
    // is still visible, so the reduced-scale band is wider than at n=1000
    int ok = 0;
    for (int s = 0; s < 10; ++s) {
        Graph g = er_sample(300, 0.3, 91000 + s);
        LaplacianReport rep = laplacian_spectrum_check(g, 0.3);
        CHECK(rep.kernel_exact);
        CHECK(rep.psd_ok);
        if (rep.ratio >= 0.8 && rep.ratio <= 1.15) ++ok;
    }
    CHECK(ok >= 9);
}
