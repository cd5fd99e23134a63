#include "pathchain/ising.hpp"

#include <array>
#include <cmath>
#include <random>

#include "pathchain/errors.hpp"

namespace pathchain {

SpinLattice::SpinLattice(int side, std::uint64_t seed)
    : SpinLattice(side, std::vector<signed char>(static_cast<std::size_t>(side > 0 ? side * side : 0), 1), seed) {}

SpinLattice::SpinLattice(int side, std::vector<signed char> spins, std::uint64_t seed)
    : side_(side), seed_(seed), spins_(std::move(spins)) {
    if (side_ < 2) throw ParameterError("ising: lattice side must be >= 2");
    if (spins_.size() != static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_))
        throw InputError("ising: spin count does not match L*L");
    for (const auto s : spins_)
        if (s != 1 && s != -1) throw InputError("ising: spins must be +1 or -1");
}

int SpinLattice::neighbour_sum(int row, int col) const noexcept {
    const int up = (row + side_ - 1) % side_;
    const int down = (row + 1) % side_;
    const int left = (col + side_ - 1) % side_;
    const int right = (col + 1) % side_;
    return at(up, col) + at(down, col) + at(row, left) + at(row, right);
}

double SpinLattice::magnetization() const noexcept {
    long total = 0;
    for (const auto s : spins_) total += s;
    return static_cast<double>(total) / static_cast<double>(spins_.size());
}

double energy(const SpinLattice& lattice) {
    const int side = lattice.side();
    long bonds = 0;
    for (int r = 0; r < side; ++r) {
        for (int c = 0; c < side; ++c) {
            const int s = lattice.at(r, c);
            bonds += s * lattice.at(r, (c + 1) % side);
            bonds += s * lattice.at((r + 1) % side, c);
        }
    }
    return -static_cast<double>(bonds);
}

IsingSample metropolis_sample(const MetropolisOptions& options) {
    if (options.side < 2) throw ParameterError("ising: lattice side must be >= 2");
    if (!(options.temperature > 0.0)) throw ParameterError("ising: temperature must be > 0");
    if (options.n_samples < 1) throw ParameterError("ising: n_samples must be >= 1");
    if (options.burn_in < 0 || options.thinning < 1)
        throw ParameterError("ising: burn_in must be >= 0 and thinning >= 1");

    const int side = options.side;
    const int sites = side * side;
    SpinLattice lattice(side, options.seed);
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, sites - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // dE = 2 s h with h in {-4,-2,0,2,4}; only dE in {4, 8} needs a draw.
    const std::array<double, 3> accept = {1.0, std::exp(-4.0 / options.temperature),
                                          std::exp(-8.0 / options.temperature)};

    auto sweep = [&] {
        for (int t = 0; t < sites; ++t) {
            const int site = pick(rng);
            const int r = site / side;
            const int c = site % side;
            const int de = 2 * lattice.at(r, c) * lattice.neighbour_sum(r, c);
            if (de <= 0 || unit(rng) < accept[static_cast<std::size_t>(de / 4)]) lattice.flip(r, c);
        }
    };

    for (int s = 0; s < options.burn_in; ++s) sweep();

    IsingSample out;
    out.side = side;
    out.temperature = options.temperature;
    out.configurations.resize(options.n_samples, sites);
    out.energies.resize(options.n_samples);
    out.magnetizations.resize(options.n_samples);
    for (int i = 0; i < options.n_samples; ++i) {
        for (int s = 0; s < options.thinning; ++s) sweep();
        const auto& spins = lattice.spins();
        for (int j = 0; j < sites; ++j) out.configurations(i, j) = spins[static_cast<std::size_t>(j)];
        out.energies(i) = energy(lattice);
        out.magnetizations(i) = lattice.magnetization();
    }
    return out;
}

}  // namespace pathchain
