#pragma once

#include <string>
#include <vector>

#include "pathchain/chains.hpp"
#include "pathchain/geometry.hpp"
#include "pathchain/targets.hpp"

namespace pathchain {

inline constexpr double kDefaultSolverTol = 1e-10;
inline constexpr int kDefaultSinkhornMaxIter = 10000;

/// Perron-Frobenius pair of a strictly positive symmetric kernel.
struct PerronPair {
    double eta = 0.0;
    Vector nu;               // unit 2-norm, strictly positive
    double residual = 0.0;   // |Delta nu - eta nu|_inf
    int iterations = 0;      // power iterations after the warm start
};

/// Symmetric scaling rho with rho .* (Delta rho) = p.
struct ScalingVector {
    Vector rho;
    double residual = 0.0;   // |R Delta R 1 - p|_inf
    int iterations = 0;
    std::vector<double> residual_trace;
};

/// Solver bookkeeping surfaced to callers that want to emit it.
struct SolverTelemetry {
    std::string solver;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> residual_trace;
    double eta = 0.0;  // Perron eigenvalue, free variants only
};

/// Power iteration with Rayleigh-quotient eigenvalue, warm-started from a
/// dense symmetric eigensolve. Stops once every component satisfies
/// |(Delta nu)_a / (eta nu_a) - 1| <= tol, which implies the absolute residual
/// is <= tol * eta. Cap: 100 * N iterations.
PerronPair perron(const KernelMatrix& kernel, double tol = kDefaultSolverTol);

/// Geometric-mean damped symmetric Sinkhorn iteration
///   rho <- sqrt(rho .* p ./ (Delta rho)),  rho_0 = sqrt(p ./ (Delta 1)).
/// Stops once max_a |rho_a (Delta rho)_a / p_a - 1| <= tol (so the absolute
/// residual is <= tol as well). The spread max_a |log(rho_a (Delta rho)_a / p_a)|
/// is non-increasing under this update; a violation throws NumericalError.
ScalingVector sinkhorn_scale(const KernelMatrix& kernel, const StationaryTarget& target,
                             double tol = kDefaultSolverTol, int max_iter = kDefaultSinkhornMaxIter);

/// Maximum path-entropy chain with free stationary distribution:
/// q_ab = nu_b Delta(a,b) / (eta nu_a), p_a = nu_a^2 / sum nu^2.
MarkovChain pnmc_free(const KernelMatrix& kernel, double tol = kDefaultSolverTol,
                      SolverTelemetry* telemetry = nullptr);

/// Maximum path-entropy chain with prescribed stationary distribution:
/// q_ab = rho_a rho_b Delta(a,b) / p_a.
MarkovChain pnmc_prescribed(const KernelMatrix& kernel, const StationaryTarget& target,
                            double tol = kDefaultSolverTol, int max_iter = kDefaultSinkhornMaxIter,
                            SolverTelemetry* telemetry = nullptr);

/// Delta*(a,b) = Delta(a,b) sqrt(k_ab k_ba), floored like any kernel. Throws
/// DegenerateInputError when a row of the prior product is identically zero.
KernelMatrix prior_weighted_kernel(const KernelMatrix& kernel, const MarkovChain& prior);

/// KL-minimal update of a prior chain, free stationary distribution.
MarkovChain pnmc_update_free(const KernelMatrix& kernel, const MarkovChain& prior,
                             double tol = kDefaultSolverTol, SolverTelemetry* telemetry = nullptr);

/// KL-minimal update of a prior chain onto a prescribed stationary distribution.
MarkovChain pnmc_update_prescribed(const KernelMatrix& kernel, const MarkovChain& prior,
                                   const StationaryTarget& target, double tol = kDefaultSolverTol,
                                   int max_iter = kDefaultSinkhornMaxIter, SolverTelemetry* telemetry = nullptr);

}  // namespace pathchain
