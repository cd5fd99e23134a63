#pragma once

#include <cstdint>
#include <vector>

#include "pathchain/types.hpp"

namespace pathchain {

/// L x L square lattice of +-1 spins, row-major, periodic boundaries.
class SpinLattice {
public:
    /// All spins up.
    explicit SpinLattice(int side, std::uint64_t seed = 0);
    SpinLattice(int side, std::vector<signed char> spins, std::uint64_t seed = 0);

    int side() const noexcept { return side_; }
    std::uint64_t seed() const noexcept { return seed_; }
    const std::vector<signed char>& spins() const noexcept { return spins_; }

    signed char at(int row, int col) const noexcept { return spins_[index(row, col)]; }
    void flip(int row, int col) noexcept { spins_[index(row, col)] = static_cast<signed char>(-spins_[index(row, col)]); }

    /// Sum of the four periodic neighbours of (row, col).
    int neighbour_sum(int row, int col) const noexcept;

    double magnetization() const noexcept;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(side_) + static_cast<std::size_t>(col);
    }

    int side_;
    std::uint64_t seed_;
    std::vector<signed char> spins_;
};

/// Ferromagnetic energy E = -sum over nearest-neighbour bonds of s_i s_j.
/// Each site contributes its right and down bond, so an L x L periodic lattice
/// has 2 L^2 bonds (for L = 2 the two bonds between a pair are both counted).
double energy(const SpinLattice& lattice);

struct MetropolisOptions {
    int side = 16;
    double temperature = 2.4;  // k_B T
    int n_samples = 1000;
    int burn_in = 1000;        // sweeps
    int thinning = 10;         // sweeps between recorded samples
    std::uint64_t seed = 0;
};

struct IsingSample {
    int side = 0;
    double temperature = 0.0;
    Matrix configurations;  // n_samples x L^2, entries +-1
    Vector energies;
    Vector magnetizations;  // mean spin
};

/// Single-spin-flip Metropolis from the all-up state. One sweep is L^2
/// proposals at uniformly random sites, each accepted with probability
/// min(1, exp(-dE / k_B T)). Bit-identical output for identical options.
IsingSample metropolis_sample(const MetropolisOptions& options);

}  // namespace pathchain
