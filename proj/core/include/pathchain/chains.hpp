#pragma once

#include <string>

#include "pathchain/geometry.hpp"
#include "pathchain/types.hpp"

namespace pathchain {

enum class ChainProvenance { rnmc, pnmc_free, pnmc_prescribed, pnmc_update, external };

const char* to_string(ChainProvenance provenance) noexcept;

/// Row-stochastic transition matrix q with its stationary distribution p.
///
/// The constructor checks shapes only. Constructors of particular chains are
/// responsible for consistency of q and p; `validate` is the audit.
class MarkovChain {
public:
    MarkovChain(Matrix q, Vector p, bool reversible, ChainProvenance provenance);

    const Matrix& q() const noexcept { return q_; }
    const Vector& p() const noexcept { return p_; }
    bool reversible() const noexcept { return reversible_; }
    ChainProvenance provenance() const noexcept { return provenance_; }
    Eigen::Index size() const noexcept { return q_.rows(); }

private:
    Matrix q_;
    Vector p_;
    bool reversible_;
    ChainProvenance provenance_;
};

/// Residuals of a chain against the MarkovChain invariants. All norms are max
/// norms; `worst_*` locate the offending row/column/pair.
struct ChainReport {
    double tol = 0.0;
    double row_sum_deviation = 0.0;      // max_a |sum_b q_ab - 1|
    Eigen::Index worst_row = 0;
    double min_entry = 0.0;              // min q_ab
    double min_stationary = 0.0;         // min p_a
    double stationary_sum_deviation = 0.0;  // |sum p - 1|
    double stationarity_residual = 0.0;  // |p^T q - p^T|_inf
    Eigen::Index worst_column = 0;
    double detailed_balance_residual = 0.0;  // max |p_a q_ab - p_b q_ba|
    Eigen::Index worst_pair_a = 0;
    Eigen::Index worst_pair_b = 0;
    double column_sum_deviation = 0.0;   // max_b |sum_a q_ab - 1|; informational
    double symmetry_residual = 0.0;      // |q - q^T|_inf; informational
    bool passed = false;
};

inline constexpr double kDefaultAuditTol = 1e-8;

/// Always returns a report. `passed` requires row sums, stationarity and
/// normalisation residuals <= tol, non-negative q, positive p and, for chains
/// flagged reversible, detailed balance <= tol.
ChainReport validate(const MarkovChain& chain, double tol = kDefaultAuditTol);

/// Row-normalised chain: q_ab = Delta(a,b)/Z(a), p_a = Z(a)/sum Z.
MarkovChain rnmc(const KernelMatrix& kernel);

/// sum_{a,b} p_a q_ab r_ab.
double path_average(const MarkovChain& chain, const Matrix& r);

}  // namespace pathchain
