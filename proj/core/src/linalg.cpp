#include "latred/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace latred {

GaussianInt gaussian_div_exact(const GaussianInt& a, const GaussianInt& b) {
    const BigInt den = b.norm_sq();
    const GaussianInt num = a * b.conj();
    return {num.re / den, num.im / den};
}

GaussianIntMatrix GaussianIntMatrix::operator*(const GaussianIntMatrix& o) const {
    GaussianIntMatrix r(n_);
    for (int i = 0; i < n_; ++i) {
        for (int k = 0; k < n_; ++k) {
            const GaussianInt& a = (*this)(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
        }
    }
    return r;
}

ComplexMatrix GaussianIntMatrix::to_complex() const {
    ComplexMatrix m(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j).to_complex();
    return m;
}

bool is_finite(const ComplexMatrix& A) {
    for (Eigen::Index j = 0; j < A.cols(); ++j)
        for (Eigen::Index i = 0; i < A.rows(); ++i)
            if (!std::isfinite(A(i, j).real()) || !std::isfinite(A(i, j).imag()))
                return false;
    return true;
}

static void require_square_finite(const ComplexMatrix& A, const char* what) {
    if (A.rows() != A.cols() || A.rows() == 0)
        throw InvalidInputError(std::string(what) + ": matrix must be square and nonempty");
    if (!is_finite(A))
        throw InvalidInputError(std::string(what) + ": matrix has non-finite entries");
}

SvdFactors svd(const ComplexMatrix& A) {
    require_square_finite(A, "svd");
    Eigen::JacobiSVD<ComplexMatrix> js(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {js.matrixU(), js.singularValues(), js.matrixV()};
}

UnitaryEigFactors eig_unitary(const ComplexMatrix& Q, double tau_unit) {
    require_square_finite(Q, "eig_unitary");
    const Eigen::Index n = Q.rows();
    const double dev = (Q.adjoint() * Q - ComplexMatrix::Identity(n, n)).norm();
    if (!(dev <= tau_unit))
        throw NotUnitaryError("eig_unitary: ||Q^H Q - I||_F = " + std::to_string(dev));

    // A unitary matrix is normal, so its Schur form is diagonal up to
    // roundoff; the Schur basis is then a unitary diagonalizer.
    Eigen::ComplexSchur<ComplexMatrix> schur(Q, true);
    if (schur.info() != Eigen::Success)
        throw NumericError("eig_unitary: Schur iteration failed");
    ComplexMatrix V1 = schur.matrixU();
    ComplexVector d(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex t = schur.matrixT()(k, k);
        const double m = std::abs(t);
        d(k) = m > 0 ? t / m : Complex(1.0, 0.0);
    }

    // Deterministic order: angle in [0, 2pi) ascending, ties by position.
    std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    auto angle = [&](Eigen::Index k) {
        double a = std::arg(d(k));
        if (a < 0) a += 2.0 * std::numbers::pi;
        return a;
    };
    std::stable_sort(perm.begin(), perm.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return angle(a) < angle(b); });

    UnitaryEigFactors out;
    out.V1.resize(n, n);
    out.d.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.V1.col(k) = V1.col(perm[static_cast<std::size_t>(k)]);
        out.d(k) = d(perm[static_cast<std::size_t>(k)]);
    }
    return out;
}

ComplexMatrix inverse(const ComplexMatrix& A) {
    require_square_finite(A, "inverse");
    Eigen::PartialPivLU<ComplexMatrix> lu(A);
    const double eps_rank =
        static_cast<double>(A.rows()) * std::numeric_limits<double>::epsilon();
    if (!(lu.rcond() > eps_rank))
        throw SingularMatrixError("inverse: matrix is numerically singular");
    return lu.inverse();
}

int numeric_rank(const ComplexMatrix& A) {
    require_square_finite(A, "numeric_rank");
    Eigen::JacobiSVD<ComplexMatrix> js(A);
    const auto& s = js.singularValues();
    const double tol =
        static_cast<double>(A.rows()) * std::numeric_limits<double>::epsilon() * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol) ++rank;
    return rank;
}

static BigInt round_part(double v) {
    const double r = std::round(v);  // halves away from zero
    if (std::abs(r) < 9.0e18) return BigInt(static_cast<long long>(r));
    return BigInt(r);  // beyond 2^53 doubles are already integral
}

GaussianIntMatrix round_to_gaussian(const ComplexMatrix& A) {
    if (!is_finite(A))
        throw InvalidInputError("round_to_gaussian: matrix has non-finite entries");
    const int n = static_cast<int>(A.rows());
    if (A.rows() != A.cols())
        throw InvalidInputError("round_to_gaussian: matrix must be square");
    GaussianIntMatrix Z(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Z(i, j) = GaussianInt(round_part(A(i, j).real()), round_part(A(i, j).imag()));
    return Z;
}

GaussianInt gaussian_det(const GaussianIntMatrix& Z) {
    const int n = Z.n();
    if (n == 0) return GaussianInt(1);
    GaussianIntMatrix a = Z;
    GaussianInt prev(1);
    bool negate = false;
    for (int k = 0; k + 1 < n; ++k) {
        if (a(k, k).is_zero()) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r) {
                if (!a(r, k).is_zero()) {
                    pivot = r;
                    break;
                }
            }
            if (pivot < 0) return GaussianInt(0);
            for (int c = k; c < n; ++c) std::swap(a(k, c), a(pivot, c));
            negate = !negate;
        }
        // Bareiss step: every quotient is an exact minor of Z.
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                const GaussianInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                a(i, j) = (k == 0) ? num : gaussian_div_exact(num, prev);
            }
            a(i, k) = GaussianInt(0);
        }
        prev = a(k, k);
    }
    GaussianInt det = a(n - 1, n - 1);
    return negate ? -det : det;
}

GaussianIntMatrix gaussian_adjugate(const GaussianIntMatrix& Z) {
    const int n = Z.n();
    GaussianIntMatrix adj(n);
    if (n == 1) {
        adj(0, 0) = GaussianInt(1);
        return adj;
    }
    GaussianIntMatrix minor(n - 1);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            for (int i = 0, mi = 0; i < n; ++i) {
                if (i == r) continue;
                for (int j = 0, mj = 0; j < n; ++j) {
                    if (j == c) continue;
                    minor(mi, mj) = Z(i, j);
                    ++mj;
                }
                ++mi;
            }
            GaussianInt cof = gaussian_det(minor);
            if ((r + c) % 2 != 0) cof = -cof;
            adj(c, r) = cof;  // adjugate is the transposed cofactor matrix
        }
    }
    return adj;
}

GaussianIntMatrix unimodular_inverse(const GaussianIntMatrix& T) {
    const GaussianInt det = gaussian_det(T);
    if (!det.is_unit())
        throw InvalidInputError("unimodular_inverse: |det|^2 != 1");
    GaussianIntMatrix inv = gaussian_adjugate(T);
    const GaussianInt det_inv = det.conj();  // unit inverse
    for (int i = 0; i < T.n(); ++i)
        for (int j = 0; j < T.n(); ++j) inv(i, j) = inv(i, j) * det_inv;
    return inv;
}

}  // namespace latred
