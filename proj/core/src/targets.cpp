#include "pathchain/targets.hpp"

#include <cmath>
#include <sstream>

#include "pathchain/errors.hpp"

namespace pathchain {

const char* to_string(TargetProvenance provenance) noexcept {
    switch (provenance) {
        case TargetProvenance::uniform: return "uniform";
        case TargetProvenance::energy_bias: return "energy_bias";
        case TargetProvenance::entropy_logistic: return "entropy_logistic";
        case TargetProvenance::custom: return "custom";
    }
    return "custom";
}

StationaryTarget::StationaryTarget(Vector p, TargetProvenance provenance)
    : p_(std::move(p)), provenance_(provenance) {
    if (p_.size() < 2) throw InputError("stationary target needs at least 2 entries");
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_(i)) || p_(i) <= 0.0) {
            std::ostringstream os;
            os << "stationary target: entry " << i << " is not strictly positive (" << p_(i) << ")";
            throw InputError(os.str());
        }
    }
    p_ /= p_.sum();
}

StationaryTarget uniform_target(Eigen::Index n) {
    if (n < 2) throw ParameterError("uniform target: N must be >= 2");
    return StationaryTarget(Vector::Constant(n, 1.0 / static_cast<double>(n)), TargetProvenance::uniform);
}

StationaryTarget energy_bias_target(const Vector& energies, double beta_new, double beta_old) {
    if (!(beta_new > 0.0) || !(beta_old > 0.0)) throw ParameterError("energy bias: inverse temperatures must be > 0");
    if (!energies.allFinite()) throw InputError("energy bias: non-finite energy");
    const double dbeta = beta_new - beta_old;
    Vector exponent = -dbeta * energies;
    exponent.array() -= exponent.maxCoeff();
    return StationaryTarget(exponent.array().exp().matrix(), TargetProvenance::energy_bias);
}

Vector profile_entropies(const Matrix& profiles) {
    Vector s(profiles.rows());
    for (Eigen::Index i = 0; i < profiles.rows(); ++i) {
        double total = 0.0;
        for (Eigen::Index j = 0; j < profiles.cols(); ++j) {
            const double x = profiles(i, j);
            if (!std::isfinite(x) || x < 0.0) {
                std::ostringstream os;
                os << "entropy target: row " << i << " has a negative or non-finite entry";
                throw InputError(os.str());
            }
            total += x;
        }
        if (!(total > 0.0)) {
            std::ostringstream os;
            os << "entropy target: row " << i << " sums to zero";
            throw DegenerateInputError(os.str());
        }
        double h = 0.0;
        for (Eigen::Index j = 0; j < profiles.cols(); ++j) {
            const double x = profiles(i, j) / total;
            if (x > 0.0) h -= x * std::log(x);
        }
        s(i) = h;
    }
    return s;
}

StationaryTarget entropy_logistic_target(const Matrix& profiles) {
    const Vector s = profile_entropies(profiles);
    Vector w = s.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
    return StationaryTarget(std::move(w), TargetProvenance::entropy_logistic);
}

}  // namespace pathchain
