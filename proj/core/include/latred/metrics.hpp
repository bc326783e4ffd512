#pragma once

#include <string>

#include "latred/types.hpp"

namespace latred {

// G = H^{-1} H^{-H}, Hermitian positive definite for full-rank H.
struct GramMatrix {
    ComplexMatrix G;
};

// |det Z| classes used by the determinant table; classification is by the
// exact value of |det|^2 (1, 2, 4, 5, 8, or above).
enum class DetBucket { One, Sqrt2, Two, Sqrt5, TwoSqrt2, AboveTwoSqrt2 };

std::string to_label(DetBucket b);

GramMatrix gram(const ComplexMatrix& H);

// Real value of the quadratic form z G z^H for one row z; throws
// NumericError if the imaginary residue exceeds 1e-9 relative.
double row_quadratic_form(const Eigen::RowVectorXcd& z, const GramMatrix& G);

// Worst per-row noise amplification: max_k z_k G z_k^H.
double cost_of_Z(const GaussianIntMatrix& Z, const GramMatrix& G);

// max_k (Q^{-1} Q^{-H})_{k,k}; equals cost_of_Z(I, gram(Q)).
double cost_of_Q(const ComplexMatrix& Q);

// Sum of the per-row quadratic forms.
double sum_noise(const GaussianIntMatrix& Z, const GramMatrix& G);

// prod_k ||q_k||^2 / |det Q| over columns q_k (squared-norm numerator).
double orthogonality_defect(const ComplexMatrix& Q);

// Classical variant with unsquared column norms, reported alongside for
// comparability.
double orthogonality_defect_classical(const ComplexMatrix& Q);

// R = cost(Z_clll) / cost(Z_prop), both against gram(H). Reported downstream
// as 10*log10(R).
double ratio_R(const GaussianIntMatrix& Z_clll, const GaussianIntMatrix& Z_prop,
               const ComplexMatrix& H);

DetBucket classify_det(const GaussianIntMatrix& Z);

struct FlopEstimate {
    double pz_flops;     // integer projection incl. rank check: 8/3 N^3
    double ph_flops;     // product projection: N^3 + 4/3 N^3
    double round_flops;  // one Round call: 5 N^3
    double total_flops;  // full sweep: 5 N_theta N_alpha N^4
};

FlopEstimate flop_estimate(int N, int N_alpha, int N_theta);

}  // namespace latred
