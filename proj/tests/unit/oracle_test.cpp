#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracle.hpp"
#include "pathchain/errors.hpp"
#include "pathchain/maxent.hpp"
#include "test_support.hpp"

using namespace pathchain;
namespace t = pathchain::testing;

namespace {

struct Instance {
    KernelMatrix kernel;
    Matrix d2;
    double epsilon;
};

Instance gaussian_instance(Eigen::Index n, std::mt19937_64& rng) {
    const PointCloud cloud(t::random_points(n, 2, rng));
    const auto d = pairwise_distances(cloud);
    std::uniform_real_distribution<double> pct(30.0, 100.0);
    const double eps = bandwidth_percentile(d, pct(rng));
    return {gaussian_kernel(d, eps), d.d.cwiseAbs2(), eps};
}

}  // namespace

TEST(Oracle, TwoStatesFreeMatchesPerronChain) {
    std::mt19937_64 rng(1);
    const auto inst = gaussian_instance(2, rng);
    const auto result = oracle::maximize_objective({inst.epsilon, inst.d2, std::nullopt});
    const auto analytic = pnmc_free(inst.kernel);
    EXPECT_LE(t::max_abs_diff(result.chain.q(), analytic.q()), 1e-6);
    EXPECT_LE((result.chain.p() - analytic.p()).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_GT(result.agreeing_restarts, 1);
}

TEST(Oracle, ThreeStatesUniformTargetIsDoublyStochastic) {
    std::mt19937_64 rng(2);
    const auto inst = gaussian_instance(3, rng);
    const Vector p = Vector::Constant(3, 1.0 / 3);
    const auto result = oracle::maximize_objective({inst.epsilon, inst.d2, p});
    const auto analytic = pnmc_prescribed(inst.kernel, uniform_target(3));
    EXPECT_LE(t::max_abs_diff(result.chain.q(), analytic.q()), 1e-6);
    EXPECT_LE((result.chain.q().colwise().sum().transpose() - Vector::Ones(3)).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Oracle, InfiniteBandwidthGivesUniformChain) {
    std::mt19937_64 rng(3);
    const auto inst = gaussian_instance(4, rng);
    oracle::ChainObjective obj{std::numeric_limits<double>::infinity(), inst.d2, std::nullopt};
    EXPECT_EQ(oracle::multiplier(obj), 0.0);
    const auto result = oracle::maximize_objective(obj);
    EXPECT_LE(t::max_abs_diff(result.chain.q(), Matrix::Constant(4, 4, 0.25)), 1e-6);
    EXPECT_NEAR(result.objective, std::log(4.0), 1e-9);
}

TEST(Oracle, AnalyticChainIsNeverBeaten) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 5; ++trial) {
        const auto inst = gaussian_instance(4, rng);
        const oracle::ChainObjective obj{inst.epsilon, inst.d2, std::nullopt};
        const auto best = oracle::maximize_objective(obj, {10, 1e-13, static_cast<std::uint64_t>(trial)});
        EXPECT_GE(oracle::objective_value(obj, pnmc_free(inst.kernel)), best.objective - 1e-6);
    }
}

TEST(Oracle, RejectsInfeasibleTargetAndLargeN) {
    Matrix d2 = Matrix::Ones(3, 3);
    d2.diagonal().setZero();
    Vector bad(3);
    bad << 0.5, 0.5, 0.0;
    EXPECT_THROW(oracle::maximize_objective({1.0, d2, bad}), InputError);
    Matrix big = Matrix::Ones(5, 5);
    big.diagonal().setZero();
    EXPECT_THROW(oracle::maximize_objective({1.0, big, std::nullopt}), std::exception);
}

TEST(LocalMaxent, EqualCostsGiveUniformRow) {
    const Vector q = oracle::local_maxent_check(Vector::Constant(5, 2.0), 0.7);
    EXPECT_LE((q - Vector::Constant(5, 0.2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LocalMaxent, TwoOutcomeGibbs) {
    const double eps = 1.3;
    Vector d2(2);
    d2 << 0.0, 2.0 * eps * eps;
    const Vector q = oracle::local_maxent_check(d2, eps);
    const double e = std::exp(-1.0);
    EXPECT_NEAR(q(0), 1.0 / (1.0 + e), 1e-12);
    EXPECT_NEAR(q(1), e / (1.0 + e), 1e-12);
}

TEST(LocalMaxent, MatchesKernelRow) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        Vector d2(5);
        for (Eigen::Index i = 0; i < 5; ++i) d2(i) = u(rng);
        const double eps = 0.5 + 0.1 * trial;
        Vector analytic = (-d2.array() / (2.0 * eps * eps)).exp().matrix();
        analytic /= analytic.sum();
        EXPECT_LE((oracle::local_maxent_check(d2, eps) - analytic).cwiseAbs().maxCoeff(), 1e-8);
    }
}

TEST(IsingEnumeration, TwoByTwoByHand) {
    const double temp = 2.4;
    const auto exact = oracle::ising_exact_distribution(2, temp);
    ASSERT_EQ(exact.probabilities.size(), 16);
    EXPECT_NEAR(exact.probabilities.sum(), 1.0, 1e-15);
    EXPECT_EQ(exact.energies(0), -8.0);   // all up
    EXPECT_EQ(exact.energies(15), -8.0);  // all down
    EXPECT_EQ(exact.energies(0b0110), 8.0);  // checkerboard
    // Levels: 2 states at -8, 12 at 0, 2 at +8.
    const double z = 2.0 * std::exp(8.0 / temp) + 12.0 + 2.0 * std::exp(-8.0 / temp);
    EXPECT_NEAR(exact.probabilities(0), std::exp(8.0 / temp) / z, 1e-15);
    EXPECT_NEAR(exact.probabilities(1), 1.0 / z, 1e-15);
}
