#include "planted/certificate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "planted/spectral.hpp"

namespace planted {

namespace {

using int128 = __int128;

int128 gcd128(int128 a, int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Exact rational on 128-bit components; magnitudes here stay far below the
// overflow range after reduction.
struct Frac {
    int128 num = 0;
    int128 den = 1;

    Frac() = default;
    Frac(int128 n, int128 d) : num(n), den(d) {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    static Frac of(std::int64_t n, std::int64_t d = 1) { return Frac(n, d); }

    Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
    Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
    bool is(std::int64_t v) const { return den == 1 && num == v; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// c0 + c1 * u with exact rational coefficients; u stays symbolic so the
// equality constraints can be verified independently of the (irrational)
// eigenvalue that u is built from.
struct LinForm {
    Frac c0, c1;
    LinForm operator+(const LinForm& o) const { return {c0 + o.c0, c1 + o.c1}; }
    LinForm scaled(const Frac& s) const { return {c0 * s, c1 * s}; }
    bool is_constant(std::int64_t v) const { return c1.is(0) && c0.is(v); }
};

}  // namespace

NullCertificate null_certificate(const Graph& g, const Graph& h, CertificateOptions opts) {
    const std::int64_t n = g.vertex_count();
    const std::int64_t k = h.vertex_count();
    const std::int64_t eg = g.edge_count();
    const std::int64_t eh = h.edge_count();
    if (eg == 0) throw std::invalid_argument("null_certificate: G must have at least one edge");
    if (static_cast<std::int64_t>(n) * k > 2000)
        throw std::invalid_argument("null_certificate: nk <= 2000 required");

    NullCertificate cert;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.adjacency_matrix(),
                                                          Eigen::EigenvaluesOnly);
        cert.lambda_1_h = es.eigenvalues().maxCoeff();
        cert.lambda_k_h = es.eigenvalues().minCoeff();
    }
    const double branch_bound = (2.0 * eh - static_cast<double>(k) * k) / k;
    // Tolerance keeps the branch stable when lambda_k sits exactly on the
    // bound (cliques, complete multipartite graphs).
    cert.case_one = cert.lambda_k_h >= branch_bound - 1e-9;

    const double u_raw = -cert.lambda_k_h - 1.0 +
                         (k * cert.lambda_k_h + static_cast<double>(k) * k - 2.0 * eh) /
                             (static_cast<double>(n) * k * k);
    // tolerance: u_raw is exactly 0 for complete graphs up to rounding
    cert.u_clipped = u_raw < -1e-12;
    cert.u = std::max(u_raw, 0.0);
    cert.b = 1.0 / (2.0 * eg);

    // Coefficient formulas as linear forms in u.
    const std::int64_t nk = n * k;
    const LinForm a_form{Frac(2 * eh + nk * k - k * k, 2 * k * eg * (nk - 1)),
                         Frac(1, 2 * eg * (nk - 1))};
    const LinForm c_form{Frac(k * k - k - 2 * eh, nk * (nk - 1)), Frac(-1, n * (nk - 1))};
    const Frac b_frac(1, 2 * eg);
    cert.a = a_form.c0.value() + a_form.c1.value() * cert.u;
    cert.c = c_form.c0.value() + c_form.c1.value() * cert.u;

    if (cert.case_one) {
        // <J, Y> = a 2 e(G) k + b 2 e(G)(2 e(H) + u k) + c n^2 k^2
        LinForm total = a_form.scaled(Frac(2 * eg * k, 1)) +
                        LinForm{b_frac * Frac(2 * eg * 2 * eh, 1), b_frac * Frac(2 * eg * k, 1)} +
                        c_form.scaled(Frac(n * n * k * k, 1));
        cert.total_sum_exact = total.is_constant(k * k);
        // Row trace: a 2 e(G) + c n
        LinForm row = a_form.scaled(Frac(2 * eg, 1)) + c_form.scaled(Frac(n, 1));
        cert.row_traces_exact = row.is_constant(1);
    } else {
        cert.total_sum_exact = (b_frac * Frac(2 * eg * k * k, 1)).is(k * k);
        cert.row_traces_exact = (b_frac * Frac(2 * eg, 1)).is(1);
    }

    // Floating assembly.
    const Eigen::Index dim = static_cast<Eigen::Index>(n) * k;
    auto row_of = [&](int j, int i) { return static_cast<Eigen::Index>(j - 1) * k + (i - 1); };
    if (cert.case_one) {
        cert.Y = Eigen::MatrixXd::Constant(dim, dim, cert.c);
        for (int j = 1; j <= n; ++j) {
            const double d = cert.a * g.degree(j);
            for (int i = 1; i <= k; ++i) cert.Y(row_of(j, i), row_of(j, i)) += d;
        }
        add_kron_adjacency(cert.Y, g, h, cert.b);
        for (const auto& [x, y] : g.edges()) {
            for (int i = 1; i <= k; ++i) {
                cert.Y(row_of(x, i), row_of(y, i)) += cert.b * cert.u;
                cert.Y(row_of(y, i), row_of(x, i)) += cert.b * cert.u;
            }
        }
    } else {
        cert.Y = Eigen::MatrixXd::Zero(dim, dim);
        for (int j = 1; j <= n; ++j) {
            const double d = cert.b * g.degree(j);
            for (int i = 1; i <= k; ++i) cert.Y(row_of(j, i), row_of(j, i)) += d;
        }
        // edge blocks b (J_k - I_k) from -I (Laplacian) plus J
        for (const auto& [x, y] : g.edges()) {
            for (int i = 1; i <= k; ++i) {
                for (int i2 = 1; i2 <= k; ++i2) {
                    if (i == i2) continue;
                    cert.Y(row_of(x, i), row_of(y, i2)) += cert.b;
                    cert.Y(row_of(y, i), row_of(x, i2)) += cert.b;
                }
            }
        }
    }

    cert.residuals = constraint_residuals(cert.Y, static_cast<int>(n), static_cast<int>(k));
    cert.objective = kron_adjacency_objective(g, h, cert.Y);
    const SdpResiduals& r = cert.residuals;
    cert.feasible = r.box <= opts.lin_tol && r.total_sum <= opts.lin_tol &&
                    r.row_traces <= opts.lin_tol && r.col_traces <= opts.lin_tol &&
                    r.psd <= opts.psd_tol;

    if (opts.q0 >= 0.0 && opts.q0 < 1.0 && opts.q0 > 0.0) {
        const double s = sigma(opts.q0);
        cert.ratio_stated = 4.0 * cert.lambda_1_h / (s * std::sqrt(static_cast<double>(n)));
        cert.ratio_proof = 2.0 * (cert.lambda_1_h - cert.lambda_k_h) *
                           std::sqrt(1.0 - opts.q0) /
                           std::sqrt(static_cast<double>(n) * opts.q0);
    } else {
        cert.ratio_stated = std::numeric_limits<double>::quiet_NaN();
        cert.ratio_proof = std::numeric_limits<double>::quiet_NaN();
    }
    return cert;
}

LaplacianReport laplacian_spectrum_check(const Graph& g, double p) {
    LaplacianReport rep;
    Eigen::MatrixXd l = g.laplacian_matrix();
    // Row sums are integer-exact in double, so the kernel check is exact.
    rep.kernel_exact = true;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        if (l.row(i).sum() != 0.0) rep.kernel_exact = false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l, Eigen::EigenvaluesOnly);
    rep.min_eigenvalue = es.eigenvalues()[0];
    rep.lambda_2 = es.eigenvalues()[1];
    rep.psd_ok = rep.min_eigenvalue >= -1e-9;
    const double n = g.vertex_count();
    const double denom = n * p - 2.0 * std::sqrt(n * p * (1.0 - p));
    rep.ratio = rep.lambda_2 / denom;
    return rep;
}

}  // namespace planted
