#include <benchmark/benchmark.h>

#include "randten/bounds.hpp"
#include "randten/mc.hpp"
#include "randten/rng.hpp"

using namespace randten;

namespace {

BoundQuery seeded_query(std::size_t r) {
    SplitRng rng(13);
    BoundQuery q;
    q.profile.kind = ProfileKind::subset;
    q.profile.p = 2.0;
    q.profile.values.resize(r + 1);
    for (double& v : q.profile.values) v = std::exp(rng.next_uniform(-2.0, 2.0));
    q.profile.provenance.assign(r + 1, Provenance::closed_form);
    q.dims.assign(r, 8);
    q.p = 2.0;
    return q;
}

void OptimizeBeta(benchmark::State& state) {
    const BoundQuery q = seeded_query(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimized_beta_bound(q).bound);
    }
}
BENCHMARK(OptimizeBeta)->DenseRange(2, 6);

void ChaosMomentSampling(benchmark::State& state) {
    SplitRng rng(17);
    DenseTensor a({4, 4});
    for (std::size_t f = 0; f < a.size(); ++f) a[f] = rng.next_gaussian();
    for (auto _ : state) {
        benchmark::DoNotOptimize(chaos_moment_estimate(a, 4.0, 2000, 3).mean);
    }
    state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(ChaosMomentSampling)->Unit(benchmark::kMillisecond);

void SecondMomentSeries(benchmark::State& state) {
    SplitRng rng(19);
    const auto d = static_cast<std::size_t>(state.range(0));
    DenseTensor a({d, d, d});
    for (std::size_t f = 0; f < a.size(); ++f) a[f] = rng.next_gaussian();
    std::vector<std::vector<double>> xs(3, std::vector<double>(d, 0.3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(second_moment_rhs(a, xs, 1.5));
    }
}
BENCHMARK(SecondMomentSeries)->RangeMultiplier(2)->Range(2, 16);

}  // namespace
