#include "planted/eigen_solver.hpp"

#include "planted/rng.hpp"

namespace planted {

namespace detail {

Eigen::VectorXd random_start(int n, std::uint64_t seed) {
    CounterRng rng(seed, /*stream=*/0x5eed);
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = 2.0 * rng.next_unit() - 1.0;
    if (x.norm() == 0.0) x.setOnes();
    return x;
}

}  // namespace detail

EigenPair top_eigenpair(const Eigen::MatrixXd& m, PowerOptions opts) {
    DenseOp op{m};
    return top_eigenpair(op, opts);
}

EigenPair second_eigenpair(const Eigen::MatrixXd& m, const EigenPair& top, PowerOptions opts) {
    DenseOp op{m};
    std::vector<Eigen::VectorXd> deflate{top.vector};
    return detail::power_top(op, deflate, detail::random_start(op.rows(), opts.seed + 1), opts);
}

namespace {
// (lambda_1 + 1) I - M, applied implicitly.
struct ShiftNegOp {
    const Eigen::MatrixXd& m;
    double c;
    int rows() const { return static_cast<int>(m.rows()); }
    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        y.noalias() = m.selfadjointView<Eigen::Lower>() * x;
        y = c * x - y;
    }
};
}  // namespace

EigenPair smallest_eigenpair(const Eigen::MatrixXd& m, const EigenPair& top, PowerOptions opts) {
    ShiftNegOp op{m, top.value + 1.0};
    EigenPair flipped =
        detail::power_top(op, {}, detail::random_start(op.rows(), opts.seed + 2), opts);
    EigenPair out = flipped;
    out.value = op.c - flipped.value;
    // ||(cI - M)v - mu v|| == ||M v - (c - mu) v||, so the residual carries over.
    return out;
}

}  // namespace planted
