#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "memclust/baseline.hpp"
#include "memclust/clustering.hpp"

using namespace memclust;

namespace {

std::vector<BipolarVector> random_inputs(std::size_t m, std::size_t n,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution sign(0.5);
    std::vector<BipolarVector> inputs(m, BipolarVector(n));
    for (auto& u : inputs)
        for (auto& c : u) c = sign(rng) ? 1 : -1;
    return inputs;
}

void BM_distance_star_ideal(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto inputs = random_inputs(1, n, 1);
    ClusterModel model = init_weights(random_inputs(10, n, 2), 10, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(model.distance_star(inputs[0]));
}
BENCHMARK(BM_distance_star_ideal)->Arg(64)->Arg(400);

void BM_distance_star_circuit(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto inputs = random_inputs(1, n, 1);
    ClusterModel model =
        init_weights(random_inputs(10, n, 2), 10, 3, Engine::circuit);
    for (auto _ : state)
        benchmark::DoNotOptimize(model.distance_star(inputs[0]));
}
BENCHMARK(BM_distance_star_circuit)->Arg(64)->Arg(400);

void BM_train_epoch(benchmark::State& state) {
    const auto inputs = random_inputs(1000, 400, 5);
    ClusterModel model = init_weights(inputs, 10, 7);
    TrainConfig cfg;
    cfg.alpha = 0.005;
    cfg.epochs = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(train(model, inputs, cfg));
}
BENCHMARK(BM_train_epoch)->Unit(benchmark::kMillisecond);

void BM_kmeans(benchmark::State& state) {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<std::vector<double>> pts(500, std::vector<double>(64));
    for (auto& p : pts)
        for (auto& c : p) c = nd(rng);
    KMeansConfig cfg;
    cfg.k = 8;
    cfg.restarts = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(kmeans(pts, cfg));
}
BENCHMARK(BM_kmeans)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
