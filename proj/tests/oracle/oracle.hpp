#pragma once

// Brute-force references used only by the test suites. Nothing here calls the
// Perron or Sinkhorn solvers; agreement with them is what the tests check.

#include <cstdint>
#include <optional>

#include "pathchain/chains.hpp"
#include "pathchain/types.hpp"

namespace pathchain::oracle {

/// S(q, p) - (1 / 2 eps^2) sum_ab p_a q_ab d2_ab over reversible chains, with
/// S = -sum_ab p_a q_ab log q_ab. An infinite epsilon drops the cost term.
struct ChainObjective {
    double epsilon = 1.0;
    Matrix d2;
    std::optional<Vector> fixed_p;
};

double multiplier(const ChainObjective& objective);

/// Objective evaluated on an arbitrary chain (0 log 0 = 0).
double objective_value(const ChainObjective& objective, const MarkovChain& chain);

struct OracleOptions {
    int restarts = 50;
    double tol = 1e-13;  // Newton decrement threshold
    std::uint64_t seed = 1;
};

struct OracleResult {
    MarkovChain chain;
    double objective = 0.0;
    int agreeing_restarts = 0;  // restarts within 1e-9 of the best objective
};

/// Maximises the objective over symmetric edge measures mu_ab = p_a q_ab
/// (detailed balance built in). The feasible set is an affine slice of the
/// positive orthant: total mass 1 when p is free, row sums p when fixed.
/// Each restart runs damped Newton ascent in a null-space parametrisation of
/// that slice from a random interior point. N <= 4.
OracleResult maximize_objective(const ChainObjective& objective, const OracleOptions& options = {});

/// Numerical maximiser of -sum q_b log q_b - (1/2 eps^2) sum q_b d2_b over the
/// probability simplex.
Vector local_maxent_check(const Vector& d2_row, double epsilon);

/// Exact Gibbs distribution of the periodic ferromagnetic L x L Ising model by
/// enumeration (L <= 4). State s has spin j = -1 iff bit j of s is set.
struct IsingEnumeration {
    Vector probabilities;
    Vector energies;
};
IsingEnumeration ising_exact_distribution(int side, double temperature);

}  // namespace pathchain::oracle
