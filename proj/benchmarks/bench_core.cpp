#include <benchmark/benchmark.h>

#include <random>

#include "eqcheb/experiments.hpp"

using namespace eqcheb;

namespace {

CurveFamily bernoulli() { return make_lemniscate(Polynomial::from_descending({1.0, 0.0, -1.0}), 1.0); }

void BM_FaberBasis(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto f = bernoulli();
    for (auto _ : state) {
        FaberBasis basis(phi_series(f, n), n);
        benchmark::DoNotOptimize(basis[n]);
    }
}
BENCHMARK(BM_FaberBasis)->Arg(5)->Arg(21)->Arg(50);

void BM_AllRoots(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937 rng(1);
    std::normal_distribution<double> nd;
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    for (auto& x : c) x = {nd(rng), nd(rng)};
    c.back() = 1.0;
    const Polynomial p(c);
    for (auto _ : state) benchmark::DoNotOptimize(all_roots(p).roots.data());
}
BENCHMARK(BM_AllRoots)->Arg(8)->Arg(21)->Arg(64);

void BM_SampleLemniscate(benchmark::State& state) {
    const int M = static_cast<int>(state.range(0));
    const auto f = bernoulli();
    for (auto _ : state) benchmark::DoNotOptimize(sample_level_curve(f, 1.5, M).points.data());
    state.SetItemsProcessed(state.iterations() * M);
}
BENCHMARK(BM_SampleLemniscate)->Arg(256)->Arg(4096);

// n, r * 100
void BM_SolveBernoulli(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double r = static_cast<double>(state.range(1)) / 100.0;
    const auto sample = sample_level_curve(bernoulli(), r, default_sample_size(n));
    for (auto _ : state) {
        const auto sol = solve_chebyshev(sample, n);
        benchmark::DoNotOptimize(sol.sup_norm);
        state.counters["iterations"] = sol.iterations;
        state.counters["points"] = sol.sample_size;
    }
}
BENCHMARK(BM_SolveBernoulli)->Args({3, 200})->Args({5, 800})->Args({21, 150})->Unit(benchmark::kMillisecond);

void BM_SolveEllipse(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto sample = sample_level_curve(make_interval(), 2.0, default_sample_size(n));
    for (auto _ : state) benchmark::DoNotOptimize(solve_chebyshev(sample, n).sup_norm);
}
BENCHMARK(BM_SolveEllipse)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_RivlinTerms(benchmark::State& state) {
    const Polynomial p({0.3, cplx(0.1, -0.2), 0.5, 0.0, cplx(0, 0.25)});
    for (auto _ : state) benchmark::DoNotOptimize(rivlin_terms(p, 5, 4096).slack);
}
BENCHMARK(BM_RivlinTerms);

}  // namespace

BENCHMARK_MAIN();
