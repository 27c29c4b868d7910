#include <benchmark/benchmark.h>

#include <random>

#include "confloer/conley.hpp"
#include "confloer/floer_catalog.hpp"
#include "confloer/module_homology.hpp"
#include "confloer/smith.hpp"

using namespace confloer;

namespace {

ExactMatrix random_square(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-9, 9);
    ExactMatrix m(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (rng() % 3) m.set(r, c, entry(rng));
    return m;
}

} // namespace

static void SmithNormalForm(benchmark::State& state) {
    ExactMatrix m = random_square(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        auto snf = smith_normal_form(m);
        benchmark::DoNotOptimize(snf.diagonal);
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(SmithNormalForm)->RangeMultiplier(2)->Range(4, 32)->Complexity();

static void DiscretizeFlow(benchmark::State& state) {
    FlowSpec spec = catalog_flow("saddle_2d", static_cast<int>(state.range(0)));
    for (auto _ : state) {
        TransitionSystem t = discretize_flow(spec);
        benchmark::DoNotOptimize(t.cells().size());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DiscretizeFlow)->RangeMultiplier(2)->Range(16, 64)->Complexity();

static void SaddleIndexHomology(benchmark::State& state) {
    FlowSpec spec = catalog_flow("saddle_2d", static_cast<int>(state.range(0)));
    TransitionSystem t = discretize_flow(spec);
    CellSet n = t.interior_cells();
    for (auto _ : state) {
        IndexPair p = construct_index_pair(t, n);
        GradedHomology h = conley_index_homology(t, p);
        benchmark::DoNotOptimize(h.total_rank());
    }
}
BENCHMARK(SaddleIndexHomology)->Arg(32)->Arg(64);

static void MaxBlockIndexHomology(benchmark::State& state) {
    FlowSpec spec = catalog_flow("max_2d", static_cast<int>(state.range(0)));
    TransitionSystem t = discretize_flow(spec);
    CellSet n = t.interior_cells();
    for (auto _ : state) {
        IndexPair p = construct_index_pair(t, n);
        GradedHomology h = conley_index_homology(t, p);
        benchmark::DoNotOptimize(h.total_rank());
    }
}
BENCHMARK(MaxBlockIndexHomology)->Arg(32)->Arg(64);

static void BrieskornInvariants(benchmark::State& state) {
    EquivariantComplex c = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    for (auto _ : state) {
        InvariantReport r = extract_invariants(c);
        benchmark::DoNotOptimize(r.alpha);
    }
}
BENCHMARK(BrieskornInvariants);

static void DisjointUnionInvariants(benchmark::State& state) {
    EquivariantComplex y = catalog_complex("Sigma_2_3_11", Flavor::Pin2);
    for (auto _ : state) {
        EquivariantComplex yy = tensor_disjoint_union(y, y);
        InvariantReport r = extract_invariants(yy);
        benchmark::DoNotOptimize(r.beta);
    }
}
BENCHMARK(DisjointUnionInvariants);

BENCHMARK_MAIN();
