#pragma once

#include <optional>
#include <vector>

#include "latred/clll.hpp"
#include "latred/metrics.hpp"
#include "latred/types.hpp"

namespace latred {

// Default column-visit budget of the preprocessing stage; calibrated so the
// benchmark ensembles reproduce the published ratio, determinant and
// coverage statistics.
inline constexpr int kDefaultPreprocessingSteps = 6;

struct SearchConfig {
    int n_alpha = 20;
    int n_theta = 30;
    double alpha_lo = 1.0;
    double alpha_hi = 0.0;  // <= 0 means the default upper endpoint N/2
    double clll_delta = kDefaultClllDelta;
    // Effort budget of the CLLL preprocessing (column visits); <= 0 runs the
    // fully converged reduction instead.
    int preprocessing_steps = kDefaultPreprocessingSteps;
    bool include_baseline_candidate = true;
};

// The preprocessing stage used by search(): bounded or converged CLLL per
// cfg.preprocessing_steps. The same basis serves as the comparison baseline.
CLLLResult preprocess(const ComplexMatrix& H, const SearchConfig& cfg);

// theta samples: {2*pi*k / n_theta : k = 0..n_theta-1} (period endpoint excluded).
std::vector<double> theta_grid(const SearchConfig& cfg);

// alpha samples: n_alpha uniform points on [alpha_lo, alpha_hi(n)], both
// endpoints included.
std::vector<double> alpha_grid(const SearchConfig& cfg, int n);

struct GridIndex {
    int i = 0;  // eigenvalue index
    int j = 0;  // alpha index
    int k = 0;  // theta index
    bool operator==(const GridIndex&) const = default;
};

struct Candidate {
    GridIndex idx;
    std::optional<GaussianIntMatrix> Z;  // empty when the rounding degenerated
    double cost = 0.0;
    double sum_noise_amp = 0.0;
    bool feasible = false;
};

// Integer projection: elementwise rounding, with rank loss reported as an
// explicit degenerate outcome (nullopt) instead of a zero-matrix sentinel.
std::optional<GaussianIntMatrix> project_integer(const ComplexMatrix& Z0);

// Product projection Q = H0 * Z^{-1}; the float inverse is residual-checked.
ComplexMatrix project_product(const GaussianIntMatrix& Z, const ComplexMatrix& H0);

struct RoundOutcome {
    ComplexMatrix Q;
    GaussianIntMatrix Z;
};

// The Round procedure: Z <- Q0^{-1} H0, Z <- P_Z(Z), Q <- P_H0(Z).
// Returns nullopt when the integer projection degenerates.
std::optional<RoundOutcome> round_procedure(const ComplexMatrix& Q0,
                                            const ComplexMatrix& H0);

// Starting point alpha * V1 * D' * V1^H where D' = diag(d) with entry i
// (0-based) replaced by e^{-j theta}; all other eigenvalues keep their
// original values.
ComplexMatrix build_start(const ComplexMatrix& V1, const ComplexVector& d, int i,
                          double theta, double alpha);

struct ReductionResult {
    ComplexMatrix Q;
    GaussianIntMatrix Z;
    double cost = 0.0;                // of the final Z against gram(H)
    std::optional<GridIndex> winner;  // empty when the CLLL baseline won
    bool covered = false;             // some grid candidate was feasible
    bool used_fallback = false;       // no feasible candidate, baseline disabled
};

struct Factorization {
    ComplexMatrix Q;
    GaussianIntMatrix Z;
};

// Map a factorization of the CLLL-reduced basis back to the original one:
// Z = Z0 * T^{-1} (exact), Q = H * Z^{-1}.
Factorization reconstruct(const GaussianIntMatrix& Z0, const CLLLResult& clll,
                          const ComplexMatrix& H);

// The full grid search over scaled-unitary starting points.
ReductionResult search(const ComplexMatrix& H, const SearchConfig& cfg = {});

// Same, reusing an already computed CLLL reduction of H.
ReductionResult search_prereduced(const ComplexMatrix& H, const CLLLResult& clll,
                                  const SearchConfig& cfg = {});

}  // namespace latred
