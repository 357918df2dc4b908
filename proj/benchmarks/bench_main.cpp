#include <benchmark/benchmark.h>

#include <random>

#include "equiwitt/abelian.hpp"
#include "equiwitt/catalog.hpp"
#include "equiwitt/cohom.hpp"
#include "equiwitt/witt.hpp"

using namespace equiwitt;

namespace {

IntMatrix random_matrix(std::size_t n, double density, int bound, unsigned seed) {
    std::mt19937 rng(seed);
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<int> val(-bound, bound);
    IntMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (keep(rng)) a(i, j) = val(rng);
    return a;
}

void BM_SmithDense(benchmark::State& state) {
    IntMatrix a = random_matrix(static_cast<std::size_t>(state.range(0)), 0.5, 9, 1);
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a, true));
}
BENCHMARK(BM_SmithDense)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_InvariantFactorsSparse(benchmark::State& state) {
    SparseIntMatrix a = SparseIntMatrix::from_dense(random_matrix(static_cast<std::size_t>(state.range(0)), 0.02, 3, 2));
    for (auto _ : state) benchmark::DoNotOptimize(invariant_factors(a));
}
BENCHMARK(BM_InvariantFactorsSparse)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_RankMod2(benchmark::State& state) {
    SparseIntMatrix a = SparseIntMatrix::from_dense(random_matrix(static_cast<std::size_t>(state.range(0)), 0.02, 3, 3));
    for (auto _ : state) benchmark::DoNotOptimize(rank_mod2(a));
}
BENCHMARK(BM_RankMod2)->RangeMultiplier(2)->Range(64, 512)->Unit(benchmark::kMillisecond);

void BM_OrdinaryCohomologySubdividedSphere(benchmark::State& state) {
    SimplicialGComplex x = sphere(1, 3);
    for (int i = 0; i < state.range(0); ++i) x = barycentric_subdivide(x);
    GModule z = standard_gmodule("Z");
    for (auto _ : state) benchmark::DoNotOptimize(ordinary_cohomology(x, z, 3));
    state.counters["cells"] = static_cast<double>(x.total_cells());
}
BENCHMARK(BM_OrdinaryCohomologySubdividedSphere)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_LocalTwisted(benchmark::State& state) {
    SimplicialGComplex y = prepared(build_space("S2xS2-iii"));
    GModule z1 = standard_gmodule("Z(1)");
    for (auto _ : state) benchmark::DoNotOptimize(local_cohomology(y, z1, 2));
}
BENCHMARK(BM_LocalTwisted)->Unit(benchmark::kMillisecond);

void BM_BredonKOG(benchmark::State& state) {
    SimplicialGComplex y = prepared(build_space("torus-SxS11"));
    CoefficientSystem s = ko_g_system(0);
    for (auto _ : state) benchmark::DoNotOptimize(bredon_cohomology(y, s, 1));
}
BENCHMARK(BM_BredonKOG)->Unit(benchmark::kMillisecond);

void BM_BorelMod2(benchmark::State& state) {
    SimplicialGComplex y = prepared(sphere(2, 1));
    GModule m = standard_gmodule("Z/2");
    for (auto _ : state) benchmark::DoNotOptimize(borel_cohomology(y, m, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BorelMod2)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);

void BM_WittSphereTable(benchmark::State& state) {
    for (auto _ : state)
        for (auto [p, q] : {std::pair{0, 3}, {1, 2}, {2, 1}, {3, 0}, {1, 3}, {2, 2}, {2, 3}})
            benchmark::DoNotOptimize(wr(sphere(p, q)));
}
BENCHMARK(BM_WittSphereTable)->Unit(benchmark::kMillisecond);

void BM_WittExE(benchmark::State& state) {
    SimplicialGComplex x = build_space("ExE");
    for (auto _ : state) benchmark::DoNotOptimize(wr(x));
}
BENCHMARK(BM_WittExE)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
