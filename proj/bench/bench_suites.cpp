// Serial reference against the OpenMP kernels on the same workloads.

#include <benchmark/benchmark.h>

#include "vdpkit/generation.hpp"
#include "vdpkit/report.hpp"

using namespace vdp;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void label(benchmark::State& state) { state.SetLabel(state.range(0) == 0 ? "serial" : "parallel"); }

void BM_Suite(benchmark::State& state, const char* suite) {
  report::Config c;
  c.execution = mode(state);
  for (auto _ : state) {
    auto r = report::run_suite(suite, c);
    if (r.overall() != report::Verdict::Pass) state.SkipWithError("suite did not pass");
    benchmark::DoNotOptimize(r.records.size());
  }
  label(state);
}

void BM_VerifyGeneration(benchmark::State& state) {
  generation::GenerationOptions o;
  o.execution = mode(state);
  for (auto _ : state) {
    auto b = generation::verify_generation(4, 2, o);
    if (b.failed != 0) state.SkipWithError("generation failed");
    benchmark::DoNotOptimize(b.passed);
  }
  label(state);
}

}  // namespace

BENCHMARK_CAPTURE(BM_Suite, family, "family")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, forms, "forms")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, generation, "generation")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, homology, "homology")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyGeneration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
