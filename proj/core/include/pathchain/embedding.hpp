#pragma once

#include <string>
#include <vector>

#include "pathchain/chains.hpp"
#include "pathchain/types.hpp"

namespace pathchain {

/// Diffusion coordinates D_i(a) = lambda_i psi_i(a), i = 1..m.
///
/// `eigenvalues` holds lambda_0..lambda_m (lambda_0 = 1 is the trivial pair);
/// `psi` holds the p-orthonormal right eigenvectors of q for the same indices,
/// so `coords.col(i-1) == eigenvalues(i) * psi.col(i)`.
struct Embedding {
    Matrix coords;                  // N x m
    Vector eigenvalues;             // m + 1, descending
    Matrix psi;                     // N x (m + 1)
    Vector residuals;               // |S v_i - lambda_i v_i|_inf, i = 0..m
    double symmetry_residual = 0.0; // |S - S^T|_inf before symmetrisation
    std::vector<std::string> warnings;
};

/// Eigendecomposition of the symmetric conjugate S = P^{1/2} q P^{-1/2}.
/// Requires a reversible chain with strictly positive p and 1 <= m <= N-1.
/// Eigenvectors are oriented so the largest-magnitude entry of each psi_i is
/// positive (first index wins ties). Eigenvalue gaps <= tol are reported in
/// `warnings`; ordering stays deterministic.
Embedding diffusion_map(const MarkovChain& chain, Eigen::Index m, double tol = 1e-8);

}  // namespace pathchain
