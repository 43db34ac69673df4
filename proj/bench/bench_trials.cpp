// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>
#include <omp.h>

#include "monoadv/experiments.hpp"

namespace {

monoadv::ExperimentConfig config(monoadv::ExperimentKind kind) {
  monoadv::ExperimentConfig cfg;
  cfg.experiment = kind;
  cfg.n = 200;
  cfg.d = 1;
  cfg.trials = 200;
  cfg.seed = 11;
  if (kind == monoadv::ExperimentKind::oblivious_oig) {
    cfg.n = 100;
    cfg.m = 50;
  }
  return cfg;
}

void BM_Serial(benchmark::State& state, monoadv::ExperimentKind kind) {
  const auto cfg = config(kind);
  for (auto _ : state) {
    benchmark::DoNotOptimize(monoadv::run_experiment(cfg, 1).estimate.mean);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}

void BM_Parallel(benchmark::State& state, monoadv::ExperimentKind kind) {
  const auto cfg = config(kind);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(monoadv::run_experiment(cfg, workers).estimate.mean);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.trials));
}

BENCHMARK_CAPTURE(BM_Serial, oig_lb, monoadv::ExperimentKind::oig_lb)
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Parallel, oig_lb, monoadv::ExperimentKind::oig_lb)
    ->Arg(2)->Arg(4)->ArgName("workers")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, majority_lb, monoadv::ExperimentKind::majority_lb)
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Parallel, majority_lb, monoadv::ExperimentKind::majority_lb)
    ->Arg(2)->Arg(4)->ArgName("workers")->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Serial, oblivious_oig, monoadv::ExperimentKind::oblivious_oig)
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK_CAPTURE(BM_Parallel, oblivious_oig, monoadv::ExperimentKind::oblivious_oig)
    ->Arg(2)->Arg(4)->ArgName("workers")->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
