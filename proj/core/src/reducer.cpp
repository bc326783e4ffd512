#include "latred/reducer.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/LU>

#include "latred/linalg.hpp"

namespace latred {

std::vector<double> theta_grid(const SearchConfig& cfg) {
    if (cfg.n_theta < 1) throw InvalidInputError("theta_grid: n_theta must be >= 1");
    std::vector<double> t(static_cast<std::size_t>(cfg.n_theta));
    for (int k = 0; k < cfg.n_theta; ++k)
        t[static_cast<std::size_t>(k)] =
            (2.0 * std::numbers::pi * static_cast<double>(k)) / cfg.n_theta;
    return t;
}

std::vector<double> alpha_grid(const SearchConfig& cfg, int n) {
    if (cfg.n_alpha < 1) throw InvalidInputError("alpha_grid: n_alpha must be >= 1");
    const double lo = cfg.alpha_lo;
    const double hi = cfg.alpha_hi > 0.0 ? cfg.alpha_hi : static_cast<double>(n) / 2.0;
    std::vector<double> a(static_cast<std::size_t>(cfg.n_alpha));
    if (cfg.n_alpha == 1) {
        a[0] = lo;
        return a;
    }
    for (int j = 0; j < cfg.n_alpha; ++j)
        a[static_cast<std::size_t>(j)] =
            lo + (hi - lo) * static_cast<double>(j) / (cfg.n_alpha - 1);
    return a;
}

std::optional<GaussianIntMatrix> project_integer(const ComplexMatrix& Z0) {
    if (!is_finite(Z0) || Z0.rows() != Z0.cols())
        throw InvalidInputError("project_integer: input must be a finite square matrix");
    const int n = static_cast<int>(Z0.rows());
    ComplexMatrix rounded(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rounded(i, j) = Complex(std::round(Z0(i, j).real()), std::round(Z0(i, j).imag()));
    if (numeric_rank(rounded) < n) return std::nullopt;
    return round_to_gaussian(rounded);
}

ComplexMatrix project_product(const GaussianIntMatrix& Z, const ComplexMatrix& H0) {
    const int n = Z.n();
    if (H0.rows() != n || H0.cols() != n)
        throw InvalidInputError("project_product: dimension mismatch");
    const ComplexMatrix Zc = Z.to_complex();
    Eigen::PartialPivLU<ComplexMatrix> lu(Zc);
    const ComplexMatrix Zinv = lu.inverse();
    if (((Zc * Zinv) - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-8)
        throw SingularMatrixError("project_product: integer factor too ill-conditioned");
    return H0 * Zinv;
}

std::optional<RoundOutcome> round_procedure(const ComplexMatrix& Q0,
                                            const ComplexMatrix& H0) {
    if (Q0.rows() != H0.rows() || Q0.cols() != H0.cols())
        throw InvalidInputError("round_procedure: dimension mismatch");
    Eigen::PartialPivLU<ComplexMatrix> lu(Q0);
    const double eps_rank =
        static_cast<double>(Q0.rows()) * std::numeric_limits<double>::epsilon();
    if (!(lu.rcond() > eps_rank))
        throw SingularMatrixError("round_procedure: starting point is singular");
    const ComplexMatrix Z0 = lu.solve(H0);
    auto Z = project_integer(Z0);
    if (!Z) return std::nullopt;
    ComplexMatrix Q = project_product(*Z, H0);
    return RoundOutcome{std::move(Q), std::move(*Z)};
}

ComplexMatrix build_start(const ComplexMatrix& V1, const ComplexVector& d, int i,
                          double theta, double alpha) {
    const Eigen::Index n = V1.rows();
    if (d.size() != n || i < 0 || i >= n)
        throw InvalidInputError("build_start: bad eigenvalue index or dimension");
    ComplexVector d2 = d;
    d2(i) = std::polar(1.0, -theta);  // e^{-j theta}
    ComplexMatrix Q = V1 * d2.asDiagonal() * V1.adjoint();
    Q *= alpha;
    return Q;
}

Factorization reconstruct(const GaussianIntMatrix& Z0, const CLLLResult& clll,
                          const ComplexMatrix& H) {
    const GaussianIntMatrix T_inv = unimodular_inverse(clll.T);
    GaussianIntMatrix Z = Z0 * T_inv;
    ComplexMatrix Q = H * inverse(Z.to_complex());
    return {std::move(Q), std::move(Z)};
}

namespace {

struct BestCandidate {
    GridIndex idx;
    GaussianIntMatrix Z;
    double cost = 0.0;
    double sum = 0.0;
    bool valid = false;
};

}  // namespace

ReductionResult search_prereduced(const ComplexMatrix& H, const CLLLResult& clll,
                                  const SearchConfig& cfg) {
    const int n = static_cast<int>(H.rows());
    const SvdFactors f = svd(clll.H0);
    const ComplexMatrix Q1 = f.U * f.V.adjoint();  // polar unitary factor
    const UnitaryEigFactors eig = eig_unitary(Q1);
    const GramMatrix G0 = gram(clll.H0);

    const std::vector<double> thetas = theta_grid(cfg);
    const std::vector<double> alphas = alpha_grid(cfg, n);

    BestCandidate best;
    bool covered = false;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < cfg.n_alpha; ++j) {
            for (int k = 0; k < cfg.n_theta; ++k) {
                const ComplexMatrix Q0 = build_start(
                    eig.V1, eig.d, i, thetas[static_cast<std::size_t>(k)],
                    alphas[static_cast<std::size_t>(j)]);
                auto rc = round_procedure(Q0, clll.H0);
                if (!rc) continue;
                covered = true;
                const double cost = cost_of_Z(rc->Z, G0);
                const double sum = sum_noise(rc->Z, G0);
                // Lexicographic (cost, sum_noise, i, j, k); the loop order
                // makes "first strictly better wins" exactly that.
                if (!best.valid || cost < best.cost ||
                    (cost == best.cost && sum < best.sum)) {
                    best.idx = {i, j, k};
                    best.Z = std::move(rc->Z);
                    best.cost = cost;
                    best.sum = sum;
                    best.valid = true;
                }
            }
        }
    }

    // The CLLL factorization itself (Z0 = I against H0) competes in the same
    // pool, losing exact ties to grid candidates.
    bool baseline_wins = false;
    bool used_fallback = false;
    if (cfg.include_baseline_candidate) {
        const GaussianIntMatrix id = GaussianIntMatrix::identity(n);
        const double base_cost = cost_of_Z(id, G0);
        const double base_sum = sum_noise(id, G0);
        if (!best.valid || base_cost < best.cost ||
            (base_cost == best.cost && base_sum < best.sum))
            baseline_wins = true;
    } else if (!best.valid) {
        baseline_wins = true;
        used_fallback = true;
    }

    ReductionResult out;
    out.covered = covered;
    out.used_fallback = used_fallback;
    if (baseline_wins) {
        out.winner = std::nullopt;
        Factorization fact = reconstruct(GaussianIntMatrix::identity(n), clll, H);
        out.Q = std::move(fact.Q);
        out.Z = std::move(fact.Z);
    } else {
        out.winner = best.idx;
        Factorization fact = reconstruct(best.Z, clll, H);
        out.Q = std::move(fact.Q);
        out.Z = std::move(fact.Z);
    }
    out.cost = cost_of_Z(out.Z, gram(H));

    const double rel = (H - out.Q * out.Z.to_complex()).norm() / H.norm();
    if (!(rel < 1e-9))
        throw NumericError("search: factorization residual " + std::to_string(rel));
    return out;
}

CLLLResult preprocess(const ComplexMatrix& H, const SearchConfig& cfg) {
    if (cfg.preprocessing_steps > 0)
        return clll_reduce_bounded(H, cfg.clll_delta, cfg.preprocessing_steps);
    return clll_reduce(H, cfg.clll_delta);
}

ReductionResult search(const ComplexMatrix& H, const SearchConfig& cfg) {
    if (H.rows() != H.cols() || H.rows() == 0 || !is_finite(H))
        throw InvalidInputError("search: input must be a finite square matrix");
    const CLLLResult clll = preprocess(H, cfg);
    return search_prereduced(H, clll, cfg);
}

}  // namespace latred
