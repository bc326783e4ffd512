#include "latred/metrics.hpp"

#include <cmath>

#include <Eigen/LU>

#include "latred/linalg.hpp"

namespace latred {

std::string to_label(DetBucket b) {
    switch (b) {
        case DetBucket::One: return "1";
        case DetBucket::Sqrt2: return "sqrt2";
        case DetBucket::Two: return "2";
        case DetBucket::Sqrt5: return "sqrt5";
        case DetBucket::TwoSqrt2: return "2sqrt2";
        case DetBucket::AboveTwoSqrt2: return ">2sqrt2";
    }
    return "?";
}

GramMatrix gram(const ComplexMatrix& H) {
    const ComplexMatrix inv = inverse(H);
    ComplexMatrix G = inv * inv.adjoint();
    G = 0.5 * (G + G.adjoint()).eval();  // suppress floating-point asymmetry
    return {std::move(G)};
}

double row_quadratic_form(const Eigen::RowVectorXcd& z, const GramMatrix& G) {
    const Complex v = (z * G.G * z.adjoint())(0, 0);
    if (std::abs(v.imag()) > 1e-9 * std::abs(v.real()))
        throw NumericError("row_quadratic_form: imaginary residue too large");
    return v.real();
}

double cost_of_Z(const GaussianIntMatrix& Z, const GramMatrix& G) {
    const ComplexMatrix Zc = Z.to_complex();
    double worst = 0.0;
    for (int k = 0; k < Z.n(); ++k) {
        const double f = row_quadratic_form(Zc.row(k), G);
        if (k == 0 || f > worst) worst = f;
    }
    return worst;
}

double cost_of_Q(const ComplexMatrix& Q) {
    return cost_of_Z(GaussianIntMatrix::identity(static_cast<int>(Q.rows())), gram(Q));
}

double sum_noise(const GaussianIntMatrix& Z, const GramMatrix& G) {
    const ComplexMatrix Zc = Z.to_complex();
    double total = 0.0;
    for (int k = 0; k < Z.n(); ++k) total += row_quadratic_form(Zc.row(k), G);
    return total;
}

static double abs_det_checked(const ComplexMatrix& Q, const char* what) {
    if (Q.rows() != Q.cols() || Q.rows() == 0 || !is_finite(Q))
        throw InvalidInputError(std::string(what) + ": bad input matrix");
    Eigen::PartialPivLU<ComplexMatrix> lu(Q);
    const double eps_rank =
        static_cast<double>(Q.rows()) * std::numeric_limits<double>::epsilon();
    if (!(lu.rcond() > eps_rank))
        throw SingularMatrixError(std::string(what) + ": singular matrix");
    return std::abs(lu.determinant());
}

double orthogonality_defect(const ComplexMatrix& Q) {
    const double det = abs_det_checked(Q, "orthogonality_defect");
    double num = 1.0;
    for (Eigen::Index k = 0; k < Q.cols(); ++k) num *= Q.col(k).squaredNorm();
    return num / det;
}

double orthogonality_defect_classical(const ComplexMatrix& Q) {
    const double det = abs_det_checked(Q, "orthogonality_defect");
    double num = 1.0;
    for (Eigen::Index k = 0; k < Q.cols(); ++k) num *= Q.col(k).norm();
    return num / det;
}

double ratio_R(const GaussianIntMatrix& Z_clll, const GaussianIntMatrix& Z_prop,
               const ComplexMatrix& H) {
    const GramMatrix G = gram(H);
    return cost_of_Z(Z_clll, G) / cost_of_Z(Z_prop, G);
}

DetBucket classify_det(const GaussianIntMatrix& Z) {
    const BigInt ns = gaussian_det(Z).norm_sq();
    if (ns == 1) return DetBucket::One;
    if (ns == 2) return DetBucket::Sqrt2;
    if (ns == 4) return DetBucket::Two;
    if (ns == 5) return DetBucket::Sqrt5;
    if (ns == 8) return DetBucket::TwoSqrt2;
    return DetBucket::AboveTwoSqrt2;
}

FlopEstimate flop_estimate(int N, int N_alpha, int N_theta) {
    if (N < 1 || N_alpha < 1 || N_theta < 1)
        throw InvalidInputError("flop_estimate: all arguments must be positive");
    const double n3 = static_cast<double>(N) * N * N;
    FlopEstimate f;
    f.pz_flops = 8.0 / 3.0 * n3;
    f.ph_flops = n3 + 4.0 / 3.0 * n3;
    f.round_flops = 5.0 * n3;
    f.total_flops = 5.0 * N_theta * N_alpha * n3 * N;
    return f;
}

}  // namespace latred
