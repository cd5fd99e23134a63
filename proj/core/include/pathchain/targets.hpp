#pragma once

#include "pathchain/types.hpp"

namespace pathchain {

enum class TargetProvenance { uniform, energy_bias, entropy_logistic, custom };

const char* to_string(TargetProvenance provenance) noexcept;

/// Strictly positive probability vector over the data points.
class StationaryTarget {
public:
    /// Validates positivity and finiteness, then normalises. Throws
    /// InputError if any entry is <= 0 or non-finite.
    StationaryTarget(Vector p, TargetProvenance provenance);

    const Vector& p() const noexcept { return p_; }
    TargetProvenance provenance() const noexcept { return provenance_; }
    Eigen::Index size() const noexcept { return p_.size(); }

private:
    Vector p_;
    TargetProvenance provenance_;
};

StationaryTarget uniform_target(Eigen::Index n);

/// p_a proportional to exp(-(beta_new - beta_old) E_a), shifted by the
/// extreme exponent before exponentiation.
StationaryTarget energy_bias_target(const Vector& energies, double beta_new, double beta_old);

/// Rows are normalised to sum 1, s_i = -sum_j x_ij log x_ij (0 log 0 = 0),
/// p_i proportional to 1 / (1 + exp(-s_i)).
StationaryTarget entropy_logistic_target(const Matrix& profiles);

/// Shannon entropies of the row-normalised profiles (natural log).
Vector profile_entropies(const Matrix& profiles);

}  // namespace pathchain
