#pragma once

#include <Eigen/Dense>

#include "latred/types.hpp"

namespace latred {

// Frobenius-norm tolerance on ||Q^H Q - I|| accepted by eig_unitary.
inline constexpr double kUnitaryTol = 1e-8;

struct SvdFactors {
    ComplexMatrix U;       // unitary
    Eigen::VectorXd S;     // nonincreasing, nonnegative
    ComplexMatrix V;       // unitary; input = U * S.asDiagonal() * V^H
};

struct UnitaryEigFactors {
    ComplexMatrix V1;      // unitary
    ComplexVector d;       // unit-modulus eigenvalues, sorted by angle in [0, 2pi)
};

bool is_finite(const ComplexMatrix& A);

// Full SVD A = U diag(S) V^H.
SvdFactors svd(const ComplexMatrix& A);

// Eigendecomposition Q = V1 diag(d) V1^H of a unitary matrix. Eigenvalues are
// normalized to unit modulus and returned sorted by angle (ties by original
// position), with V1 unitary by construction.
UnitaryEigFactors eig_unitary(const ComplexMatrix& Q, double tau_unit = kUnitaryTol);

ComplexMatrix inverse(const ComplexMatrix& A);

// Count of singular values above n * eps * sigma_max.
int numeric_rank(const ComplexMatrix& A);

// Elementwise rounding of real and imaginary parts to nearest integer,
// halves away from zero.
GaussianIntMatrix round_to_gaussian(const ComplexMatrix& A);

// Exact determinant over Z + jZ (fraction-free Bareiss elimination).
GaussianInt gaussian_det(const GaussianIntMatrix& Z);

// Exact adjugate: Z * adj(Z) = det(Z) * I.
GaussianIntMatrix gaussian_adjugate(const GaussianIntMatrix& Z);

// Exact inverse of a unimodular matrix (|det|^2 = 1); throws
// InvalidInputError otherwise.
GaussianIntMatrix unimodular_inverse(const GaussianIntMatrix& T);

}  // namespace latred
