// Serial reference vs OpenMP kernels. Each benchmark takes the execution
// mode as its argument: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "critline/kernels.hpp"
#include "critline/quadrature.hpp"
#include "critline/sums_integrals.hpp"
#include "critline/zeros.hpp"

using namespace critline;

namespace {

Exec mode(const benchmark::State& st) { return st.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_HardyZGrid(benchmark::State& st) {
    std::vector<double> ts(20000);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = 1e4 + 0.05 * static_cast<double>(i);
    std::vector<double> out(ts.size());
    for (auto _ : st) {
        hardy_z_grid(ts, out, {}, mode(st));
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(ts.size()));
}

void BM_ScanZeros(benchmark::State& st) {
    ScanOptions so;
    so.exec = mode(st);
    for (auto _ : st) benchmark::DoNotOptimize(scan_zeros(2000.0, 2500.0, so));
}

void BM_Moment4(benchmark::State& st) {
    QuadratureSpec q;
    q.exec = mode(st);
    for (auto _ : st) benchmark::DoNotOptimize(moment4(1000.0, 1500.0, q).value);
}

}  // namespace

BENCHMARK(BM_HardyZGrid)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanZeros)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Moment4)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
