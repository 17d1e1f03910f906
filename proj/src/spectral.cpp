#include "planted/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "planted/parallel.hpp"

namespace planted {

double sigma(double q0) {
    if (q0 < 0.0 || q0 >= 1.0) throw std::invalid_argument("sigma: q0 in [0,1) required");
    return std::sqrt(q0 / (1.0 - q0));
}

TestOutcome spectral_test(const Graph& g, double q0, PowerOptions opts) {
    if (q0 <= 0.0 || q0 >= 1.0) throw std::invalid_argument("spectral_test: q0 in (0,1) required");
    ShiftedAdjacency m(g, q0);
    EigenPair top = top_eigenpair(m, opts);
    TestOutcome out;
    out.test_name = "spectral";
    out.statistic = top.value;
    out.threshold = 2.1 * sigma(q0) * std::sqrt(static_cast<double>(g.vertex_count()));
    out.decision = out.statistic >= out.threshold;
    out.reliable = top.converged;
    out.info["sigma"] = sigma(q0);
    out.info["residual"] = top.residual;
    out.info["iterations"] = top.iterations;
    return out;
}

namespace {

// Shifted adjacency with one row/column zeroed out: equivalent to the
// principal submatrix padded with a zero coordinate, so power iteration on
// it yields the leave-one-out eigenvector.
struct LeaveOneOutOp {
    const ShiftedAdjacency& m;
    int skip;  // 1-based vertex
    int rows() const { return m.rows(); }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        m.apply(x, y);
        y[skip - 1] = 0.0;
    }
};

std::vector<int> top_k_magnitude(const Eigen::VectorXd& v, int k, int skip) {
    std::vector<int> idx;
    idx.reserve(v.size() - 1);
    for (int i = 1; i <= v.size(); ++i)
        if (i != skip) idx.push_back(i);
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](int a, int b) {
        double ma = std::abs(v[a - 1]), mb = std::abs(v[b - 1]);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    idx.resize(k);
    return idx;
}

}  // namespace

IdentificationResult identify(const Graph& g, double q0, int k, IdentifyOptions opts) {
    const int n = g.vertex_count();
    if (q0 < 0.0 || q0 >= 1.0) throw std::invalid_argument("identify: q0 in [0,1) required");
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("identify: 1 <= k <= n-1 required");

    ShiftedAdjacency m(g, q0);
    PowerOptions popts{opts.tol, opts.max_iter, opts.eigen_seed};
    EigenPair full = top_eigenpair(m, popts);

    IdentificationResult res;
    res.threshold = k * q0 + 3.0 * std::sqrt(k * q0 * std::log(static_cast<double>(k)));
    res.per_vertex.resize(n);

    parallel_for(static_cast<std::size_t>(n), [&](std::size_t idx) {
        const int i = static_cast<int>(idx) + 1;
        LeaveOneOutOp op{m, i};
        Eigen::VectorXd start = full.vector;
        start[i - 1] = 0.0;
        if (start.norm() < 1e-12) start = detail::random_start(n, opts.eigen_seed ^ idx);
        start[i - 1] = 0.0;
        EigenPair pair = top_eigenpair_warm(op, start, popts);

        VertexScore& score = res.per_vertex[idx];
        score.vertex = i;
        score.eigen_converged = pair.converged;
        score.candidate_set = top_k_magnitude(pair.vector, k, i);
        int d = 0;
        for (int j : score.candidate_set) d += g.has_edge(i, j) ? 1 : 0;
        score.score = d;
    });

    for (const VertexScore& score : res.per_vertex) {
        if (!score.eigen_converged) {
            res.skipped.push_back(score.vertex);
            continue;
        }
        if (score.score > res.threshold) res.selected.push_back(score.vertex);
    }
    if (opts.refine_eps) res.refined = refine_low_degree(g, res.selected, q0, *opts.refine_eps);
    return res;
}

std::vector<int> refine_low_degree(const Graph& g, const std::vector<int>& s, double q0,
                                   double eps) {
    if (s.empty()) throw std::invalid_argument("refine_low_degree: S must be non-empty");
    std::vector<char> in_s(g.vertex_count() + 1, 0);
    for (int v : s) in_s[v] = 1;
    const double bar = (1.0 + eps) * q0 * static_cast<double>(s.size());
    std::vector<int> out;
    for (int i = 1; i <= g.vertex_count(); ++i) {
        int deg_s = 0;
        for (int j : g.neighbors(i)) deg_s += in_s[j];
        if (deg_s > bar) out.push_back(i);
    }
    return out;
}

std::vector<int> significant_set(const Graph& h, double c) {
    if (c <= 0.0) throw std::invalid_argument("significant_set: c > 0 required");
    const double v = h.vertex_count();
    const double bar = c * std::sqrt(v * std::log(v));
    std::vector<int> out;
    for (int i = 1; i <= h.vertex_count(); ++i)
        if (h.degree(i) > bar) out.push_back(i);
    return out;
}

namespace {

struct SpectrumSummary {
    double lambda_1, lambda_2, lambda_n;
    double min_abs_coord;  // of the leading eigenvector
};

SpectrumSummary spectrum_summary(const Graph& g, PowerOptions opts) {
    Eigen::MatrixXd a = g.adjacency_matrix();
    EigenPair top = top_eigenpair(a, opts);
    if (g.edge_count() == 0) {
        // Edgeless: zero matrix; every quantity degenerates.
        return {0.0, 0.0, 0.0, 0.0};
    }
    EigenPair second = second_eigenpair(a, top, opts);
    EigenPair bottom = smallest_eigenpair(a, top, opts);
    return {top.value, second.value, bottom.value, top.vector.cwiseAbs().minCoeff()};
}

}  // namespace

BalanceCertificate balance_certificate(const Graph& h, PowerOptions opts) {
    const int v = h.vertex_count();
    if (v < 3) throw std::invalid_argument("balance_certificate: v(H) >= 3 required");

    BalanceCertificate cert;
    SpectrumSummary s = spectrum_summary(h, opts);
    cert.lambda_1 = s.lambda_1;
    cert.lambda_2 = s.lambda_2;
    cert.lambda_n = s.lambda_n;
    auto expansion = [](const SpectrumSummary& s) {
        if (s.lambda_1 <= 0.0) return 0.0;  // edgeless convention
        return 1.0 - std::max(s.lambda_2, -s.lambda_n) / s.lambda_1;
    };
    cert.epsilon = expansion(s);
    cert.mu = std::sqrt(static_cast<double>(v)) * s.min_abs_coord;

    cert.strict_epsilon = std::numeric_limits<double>::infinity();
    cert.strict_mu = std::numeric_limits<double>::infinity();
    cert.lambda_minus = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= v; ++i) {
        Graph del = h.remove_vertex(i);
        SpectrumSummary si = spectrum_summary(del, opts);
        cert.strict_epsilon = std::min(cert.strict_epsilon, expansion(si));
        cert.strict_mu = std::min(
            cert.strict_mu, std::sqrt(static_cast<double>(v - 1)) * si.min_abs_coord);
        cert.lambda_minus = std::min(cert.lambda_minus, si.lambda_1);
    }
    return cert;
}

IdentificationGuarantee identification_guarantee(const Graph& h, std::int64_t n, double q0,
                                                 double delta, PowerOptions opts) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("identification_guarantee: delta in (0,1) required");
    if (q0 <= 0.0 || q0 >= 1.0)
        throw std::invalid_argument("identification_guarantee: q0 in (0,1) required");

    IdentificationGuarantee rep;
    rep.certificate = balance_certificate(h, opts);
    const double eps = rep.certificate.strict_epsilon;
    const double mu = rep.certificate.strict_mu;

    rep.alpha = 2.0 * delta / (mu * mu * (1.0 - delta));
    rep.alpha_ok = rep.alpha < 1.0;
    rep.lambda_minus_ratio =
        std::abs(rep.certificate.lambda_minus) / std::sqrt(static_cast<double>(n));
    rep.required_ratio = (eps > 0.0) ? 3.0 * sigma(q0) / (eps * delta)
                                     : std::numeric_limits<double>::infinity();
    rep.ratio_ok = rep.lambda_minus_ratio > rep.required_ratio;
    rep.ok = rep.ratio_ok && rep.alpha_ok;
    if (rep.alpha_ok) rep.c = 4.0 / ((1.0 - rep.alpha) * (1.0 - q0));
    return rep;
}

}  // namespace planted
