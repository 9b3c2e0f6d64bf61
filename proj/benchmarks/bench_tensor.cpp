#include <benchmark/benchmark.h>

#include "randten/rng.hpp"
#include "randten/tensor.hpp"

using namespace randten;

namespace {

DenseTensor seeded_tensor(std::vector<std::size_t> shape) {
    DenseTensor t(std::move(shape));
    SplitRng rng(7);
    for (std::size_t f = 0; f < t.size(); ++f) t[f] = rng.next_gaussian();
    return t;
}

std::vector<std::vector<double>> unit_blocks(const DenseTensor& t) {
    std::vector<std::vector<double>> xs;
    for (std::size_t d : t.shape()) {
        xs.emplace_back(d, 1.0 / std::sqrt(static_cast<double>(d)));
    }
    return xs;
}

void EvalMultilinear(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const DenseTensor t = seeded_tensor({d, d, d});
    const auto xs = unit_blocks(t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_multilinear(t, xs));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(EvalMultilinear)->RangeMultiplier(2)->Range(4, 64)->Complexity();

void ContractOneAxis(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const DenseTensor t = seeded_tensor({d, d, d});
    const std::vector<double> x(d, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(contract_axis(t, 1, x));
    }
}
BENCHMARK(ContractOneAxis)->RangeMultiplier(2)->Range(4, 64);

void ReshapeByPartition(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const DenseTensor t = seeded_tensor({d, d, d});
    const Partition p(3, {{0}, {1, 2}});
    for (auto _ : state) {
        benchmark::DoNotOptimize(reshape_partition(t, p));
    }
}
BENCHMARK(ReshapeByPartition)->RangeMultiplier(2)->Range(4, 32);

void EnumeratePartitions(benchmark::State& state) {
    const auto r = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_partitions(r));
    }
}
BENCHMARK(EnumeratePartitions)->DenseRange(4, 8);

}  // namespace
