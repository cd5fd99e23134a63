#include <benchmark/benchmark.h>

#include <random>

#include "pathchain/embedding.hpp"
#include "pathchain/maxent.hpp"

namespace {

using namespace pathchain;

PointCloud cloud(Eigen::Index n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    Matrix x(n, 3);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < 3; ++j) x(i, j) = normal(rng);
    return PointCloud(x);
}

KernelMatrix kernel(Eigen::Index n) {
    const auto d = pairwise_distances(cloud(n));
    return gaussian_kernel(d, bandwidth_percentile(d, 10.0));
}

void BM_PairwiseDistances(benchmark::State& state) {
    const auto c = cloud(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_distances(c));
}
BENCHMARK(BM_PairwiseDistances)->RangeMultiplier(2)->Range(128, 1024);

void BM_Rnmc(benchmark::State& state) {
    const auto k = kernel(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rnmc(k));
}
BENCHMARK(BM_Rnmc)->RangeMultiplier(2)->Range(128, 1024);

void BM_Perron(benchmark::State& state) {
    const auto k = kernel(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(perron(k));
}
BENCHMARK(BM_Perron)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_SinkhornUniform(benchmark::State& state) {
    const auto k = kernel(state.range(0));
    const auto target = uniform_target(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sinkhorn_scale(k, target));
}
BENCHMARK(BM_SinkhornUniform)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

void BM_DiffusionMap(benchmark::State& state) {
    const auto chain = rnmc(kernel(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(diffusion_map(chain, 2));
}
BENCHMARK(BM_DiffusionMap)->RangeMultiplier(2)->Range(128, 1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
