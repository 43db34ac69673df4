// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace monoadv {

/// Reference runner: trials in index order on the calling thread.
template <typename Row, typename Fn>
std::vector<Row> run_trials_serial(std::uint64_t trials, Fn&& fn) {
  std::vector<Row> rows(trials);
  for (std::uint64_t t = 0; t < trials; ++t) rows[t] = fn(t);
  return rows;
}

/// OpenMP runner. Rows land at their trial index, so the result equals the
/// serial runner's for any worker count. The exception of the lowest failing
/// trial is rethrown.
template <typename Row, typename Fn>
std::vector<Row> run_trials_parallel(std::uint64_t trials, int workers, Fn&& fn) {
  std::vector<Row> rows(trials);
  std::vector<std::exception_ptr> errors(trials);
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers > 0 ? workers : 1)
  for (std::int64_t t = 0; t < count; ++t) {
    try {
      rows[t] = fn(static_cast<std::uint64_t>(t));
    } catch (...) {
      errors[t] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

template <typename Row, typename Fn>
std::vector<Row> run_trials(std::uint64_t trials, int workers, Fn&& fn) {
  if (workers <= 1) return run_trials_serial<Row>(trials, fn);
  return run_trials_parallel<Row>(trials, workers, fn);
}

}  // namespace monoadv
