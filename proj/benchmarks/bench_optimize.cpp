#include <benchmark/benchmark.h>

#include "randten/injective_norm.hpp"
#include "randten/rng.hpp"
#include "randten/variance.hpp"

using namespace randten;

namespace {

DenseTensor seeded_tensor(std::vector<std::size_t> shape) {
    DenseTensor t(std::move(shape));
    SplitRng rng(11);
    for (std::size_t f = 0; f < t.size(); ++f) t[f] = rng.next_gaussian();
    return t;
}

void InjectiveNormAscent(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const DenseTensor t = seeded_tensor({d, d, d});
    const AscentConfig cfg{.restarts = 8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(estimate_injective_norm(t, 2.0, cfg).value);
    }
}
BENCHMARK(InjectiveNormAscent)->RangeMultiplier(2)->Range(2, 16)->Unit(benchmark::kMillisecond);

void MatrixOracle(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const DenseTensor t = seeded_tensor({d, d});
    for (auto _ : state) {
        benchmark::DoNotOptimize(matrix_operator_norm_oracle(t));
    }
}
BENCHMARK(MatrixOracle)->RangeMultiplier(2)->Range(4, 64);

void VarianceProfileAscent(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    std::vector<DenseTensor> tensors;
    for (int k = 0; k < 3; ++k) tensors.push_back(seeded_tensor({d, d, d}));
    const RandomTensorModel model(std::move(tensors), CoeffDist::gaussian, false);
    const AscentConfig cfg{.restarts = 4};
    for (auto _ : state) {
        benchmark::DoNotOptimize(variance_profile(model, 2.0, cfg).values[1]);
    }
}
BENCHMARK(VarianceProfileAscent)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

}  // namespace
