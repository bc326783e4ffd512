#include "latred/clll.hpp"

#include <cmath>

#include "latred/linalg.hpp"

namespace latred {

namespace {

struct Gso {
    ComplexMatrix mu;    // mu(i, j) for j < i, column i against column j
    Eigen::VectorXd B;   // squared norms of the Gram-Schmidt vectors

    void recompute(const ComplexMatrix& basis) {
        const Eigen::Index n = basis.cols();
        mu = ComplexMatrix::Zero(n, n);
        B.resize(n);
        ComplexMatrix bstar = basis;
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < i; ++j) {
                // <b_i, b*_j> / ||b*_j||^2 with <x, y> = y^H x
                mu(i, j) = bstar.col(j).dot(basis.col(i)) / B(j);
                bstar.col(i) -= mu(i, j) * bstar.col(j);
            }
            B(i) = bstar.col(i).squaredNorm();
        }
    }
};

GaussianInt round_complex(const Complex& c) {
    return {static_cast<long long>(std::llround(c.real())),
            static_cast<long long>(std::llround(c.imag()))};
}

}  // namespace

CLLLResult clll_reduce(const ComplexMatrix& H, double delta) {
    if (H.rows() != H.cols() || H.rows() == 0 || !is_finite(H))
        throw InvalidInputError("clll_reduce: input must be a finite square matrix");
    if (!(delta > 0.5 && delta <= 1.0))
        throw InvalidInputError("clll_reduce: delta must lie in (0.5, 1]");
    const int n = static_cast<int>(H.cols());
    if (numeric_rank(H) < n)
        throw SingularMatrixError("clll_reduce: input is numerically singular");

    CLLLResult res;
    res.H0 = H;
    res.T = GaussianIntMatrix::identity(n);
    res.delta = delta;
    if (n == 1) return res;

    Gso gso;
    gso.recompute(res.H0);

    // Size-reduce column k against column l; mirrors the op on T exactly.
    auto red = [&](int k, int l) {
        const Complex m = gso.mu(k, l);
        if (std::abs(m.real()) <= 0.5 && std::abs(m.imag()) <= 0.5) return;
        const GaussianInt c = round_complex(m);
        const Complex cc = c.to_complex();
        res.H0.col(k) -= cc * res.H0.col(l);
        for (int r = 0; r < n; ++r) res.T(r, k) -= c * res.T(r, l);
        for (int j = 0; j < l; ++j) gso.mu(k, j) -= cc * gso.mu(l, j);
        gso.mu(k, l) -= cc;
    };

    double max_norm = 0.0;
    for (int c = 0; c < n; ++c) max_norm = std::max(max_norm, res.H0.col(c).norm());
    const long bit_proxy = max_norm > 1.0 ? static_cast<long>(std::ceil(std::log2(max_norm))) : 0;
    const long cap = 10L * n * n * (64 + bit_proxy);

    long iters = 0;
    long swaps = 0;
    int k = 1;
    while (k < n) {
        if (++iters > cap)
            throw IterationCapError("clll_reduce: iteration cap exceeded");

        red(k, k - 1);
        const double m2 = std::norm(gso.mu(k, k - 1));
        if (gso.B(k) < (delta - m2) * gso.B(k - 1)) {
            res.H0.col(k).swap(res.H0.col(k - 1));
            for (int r = 0; r < n; ++r) std::swap(res.T(r, k), res.T(r, k - 1));

            if (++swaps % (static_cast<long>(n) * n) == 0) {
                gso.recompute(res.H0);
            } else {
                const Complex mu_old = gso.mu(k, k - 1);
                const double bp = gso.B(k - 1);
                const double bq = gso.B(k);
                const double bp_new = bq + m2 * bp;
                const Complex mu_new = std::conj(mu_old) * bp / bp_new;
                gso.B(k) = bp * bq / bp_new;
                gso.B(k - 1) = bp_new;
                for (int j = 0; j < k - 1; ++j) std::swap(gso.mu(k - 1, j), gso.mu(k, j));
                gso.mu(k, k - 1) = mu_new;
                for (int i = k + 1; i < n; ++i) {
                    const Complex t = gso.mu(i, k);
                    gso.mu(i, k) = gso.mu(i, k - 1) - mu_old * t;
                    gso.mu(i, k - 1) = t + mu_new * gso.mu(i, k);
                }
            }
            k = std::max(k - 1, 1);
        } else {
            for (int l = k - 2; l >= 0; --l) red(k, l);
            ++k;
        }
    }
    return res;
}

CLLLResult clll_reduce_bounded(const ComplexMatrix& H, double delta, int max_steps) {
    if (H.rows() != H.cols() || H.rows() == 0 || !is_finite(H))
        throw InvalidInputError("clll_reduce_bounded: input must be a finite square matrix");
    if (!(delta > 0.5 && delta <= 1.0))
        throw InvalidInputError("clll_reduce_bounded: delta must lie in (0.5, 1]");
    if (max_steps < 0)
        throw InvalidInputError("clll_reduce_bounded: max_steps must be nonnegative");
    const int n = static_cast<int>(H.cols());
    if (numeric_rank(H) < n)
        throw SingularMatrixError("clll_reduce_bounded: input is numerically singular");

    CLLLResult res;
    res.H0 = H;
    res.T = GaussianIntMatrix::identity(n);
    res.delta = delta;
    if (n == 1 || max_steps == 0) return res;

    Gso gso;
    gso.recompute(res.H0);

    auto red = [&](int k, int l, bool& changed) {
        const Complex m = gso.mu(k, l);
        if (std::abs(m.real()) <= 0.5 && std::abs(m.imag()) <= 0.5) return;
        const GaussianInt c = round_complex(m);
        const Complex cc = c.to_complex();
        res.H0.col(k) -= cc * res.H0.col(l);
        for (int r = 0; r < n; ++r) res.T(r, k) -= c * res.T(r, l);
        for (int j = 0; j < l; ++j) gso.mu(k, j) -= cc * gso.mu(l, j);
        gso.mu(k, l) -= cc;
        changed = true;
    };

    int steps = 0;
    while (steps < max_steps) {
        bool pass_changed = false;
        for (int k = 1; k < n && steps < max_steps; ++k, ++steps) {
            for (int l = k - 1; l >= 0; --l) red(k, l, pass_changed);
            if (gso.B(k) < (delta - std::norm(gso.mu(k, k - 1))) * gso.B(k - 1)) {
                res.H0.col(k).swap(res.H0.col(k - 1));
                for (int r = 0; r < n; ++r) std::swap(res.T(r, k), res.T(r, k - 1));
                gso.recompute(res.H0);
                pass_changed = true;
            }
        }
        if (!pass_changed) break;
    }
    return res;
}

GaussianIntMatrix clll_baseline_Z(const CLLLResult& result) {
    return unimodular_inverse(result.T);
}

}  // namespace latred
