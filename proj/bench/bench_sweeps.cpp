// Serial vs OpenMP throughput of the exhaustive sweep kernels.

#include <benchmark/benchmark.h>

#include "lazycost/corpus.hpp"
#include "lazycost/trace.hpp"
#include "lazycost/xcheck.hpp"

using namespace lazycost;

namespace {

void bm_correspondence(benchmark::State& state, bool parallel) {
  Program p = corpus_program("insert_bool");
  XcheckOptions opt;
  opt.bounds.max_list_len = 3;
  opt.parallel = parallel;
  opt.check_lemmas = false;
  for (auto _ : state) {
    XcheckReport r = xcheck_program(p, opt);
    benchmark::DoNotOptimize(r.branches);
    if (!r.ok()) state.SkipWithError("violations found");
  }
}

void bm_trace_sweep(benchmark::State& state, bool parallel) {
  for (auto _ : state) {
    AmortizedReport r =
        check_amortized(QueueImpl::Banker, 5, kBankerBudgets, parallel, true);
    benchmark::DoNotOptimize(r.traces_checked);
    if (!r.ok()) state.SkipWithError("violations found");
  }
}

void bm_queue_sweep(benchmark::State& state, bool parallel) {
  for (auto _ : state) {
    auto bad = physicist_sweep_banker(6, kBankerConst, parallel);
    benchmark::DoNotOptimize(bad);
    if (bad) state.SkipWithError("violations found");
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_correspondence, serial, false);
BENCHMARK_CAPTURE(bm_correspondence, openmp, true);
BENCHMARK_CAPTURE(bm_trace_sweep, serial, false);
BENCHMARK_CAPTURE(bm_trace_sweep, openmp, true);
BENCHMARK_CAPTURE(bm_queue_sweep, serial, false);
BENCHMARK_CAPTURE(bm_queue_sweep, openmp, true);

BENCHMARK_MAIN();
