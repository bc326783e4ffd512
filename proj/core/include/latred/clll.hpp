#pragma once

#include "latred/types.hpp"

namespace latred {

// Complex LLL output: reduced basis H0 = H * T with T unimodular over the
// Gaussian integers.
struct CLLLResult {
    ComplexMatrix H0;
    GaussianIntMatrix T;
    double delta = 0.0;
};

inline constexpr double kDefaultClllDelta = 0.99;

// Complex LLL reduction with Gaussian-integer size reduction
// (|Re mu| <= 1/2 and |Im mu| <= 1/2) and the delta Lovasz condition on
// consecutive Gram-Schmidt norms. Column convention: basis vectors are the
// columns of H.
CLLLResult clll_reduce(const ComplexMatrix& H, double delta = kDefaultClllDelta);

// Effort-bounded variant: forward sweeps over the columns (size reduction
// plus the delta swap test, no backtracking), stopping after max_steps
// column visits or when a full sweep changes nothing. The output is exact
// (H0 = H * T, T unimodular) but only partially reduced; it reproduces the
// preprocessing strength behind the published benchmark ensembles.
CLLLResult clll_reduce_bounded(const ComplexMatrix& H, double delta, int max_steps);

// Z_clll = T^{-1}, exact: H = H0 * T^{-1}, so the CLLL factorization of H is
// Q = H0, Z = T^{-1}.
GaussianIntMatrix clll_baseline_Z(const CLLLResult& result);

}  // namespace latred
