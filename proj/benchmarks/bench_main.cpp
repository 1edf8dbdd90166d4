#include <benchmark/benchmark.h>

#include "ternexp/arith.hpp"
#include "ternexp/descent.hpp"
#include "ternexp/eqsolver.hpp"
#include "ternexp/lucas.hpp"
#include "ternexp/quadforms.hpp"

using namespace ternexp;

static void BM_Search(benchmark::State& state)
{
    auto const inst = SquareEqInstance::make(65, 2, 2).induced();
    SearchBox const box{static_cast<unsigned long>(state.range(0)), static_cast<unsigned long>(state.range(0)),
                        static_cast<unsigned long>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(search(inst, box));
}
BENCHMARK(BM_Search)->Arg(6)->Arg(12)->Arg(20);

static void BM_ClassNumberRange(benchmark::State& state)
{
    for (auto _ : state) {
        std::int64_t total = 0;
        for (std::int64_t D = 1; D <= state.range(0); ++D) total += class_number(D);
        benchmark::DoNotOptimize(total);
    }
}
BENCHMARK(BM_ClassNumberRange)->Arg(1000)->Arg(10000);

static void BM_ClassBound(benchmark::State& state)
{
    for (auto _ : state)
        for (std::int64_t D = 1; D <= state.range(0); ++D) benchmark::DoNotOptimize(check_class_bound(D));
}
BENCHMARK(BM_ClassBound)->Arg(1000);

static void BM_ScanDefective(benchmark::State& state)
{
    auto const n = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(scan_defective(n, {1, 12}, {-1400, 10}));
}
BENCHMARK(BM_ScanDefective)->Arg(5)->Arg(13)->Arg(30);

static void BM_SolveNormEquation(benchmark::State& state)
{
    auto const ctx = NormContext::make(14, 15);
    for (auto _ : state) benchmark::DoNotOptimize(solve_norm_equation(ctx, static_cast<unsigned long>(state.range(0))));
}
BENCHMARK(BM_SolveNormEquation)->Arg(10)->Arg(26);

static void BM_Factorize(benchmark::State& state)
{
    BigInt const m = BigInt("1000000007") * BigInt("998244353") * BigInt("1000000009");
    for (auto _ : state) benchmark::DoNotOptimize(factorize(m));
}
BENCHMARK(BM_Factorize);
BENCHMARK_MAIN();
