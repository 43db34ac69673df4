// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "monoadv/domain.hpp"
#include "monoadv/learners.hpp"
#include "monoadv/pipeline.hpp"

namespace monoadv {

/// Two-sided normal quantile for 99% intervals.
inline constexpr double kZ99 = 2.5758293035489004;

struct ErrorEstimate {
  double mean = 0.0;
  double se = 0.0;  ///< sample standard deviation / sqrt(trials)
  double ci_low = 0.0;
  double ci_high = 0.0;
  double max = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Mean, standard error and 99% interval (clipped to [0,1]) of the samples.
/// Summation runs in index order.
ErrorEstimate summarize(std::span<const double> samples, std::uint64_t seed);

/// Upper tail probability of Pearson's statistic for `observed` counts
/// against `expected` probabilities.
double chi_square_pvalue(std::span<const std::uint64_t> observed,
                         std::span<const double> expected);

/// Probability, under `dist`, that a predictor disagrees with h*.
/// `prob_one(x)` is the probability the predictor outputs 1 at x.
double exact_error(const Distribution& dist, const HypothesisClass& cls,
                   const std::function<double(PointId)>& prob_one);
double exact_error(const Distribution& dist, const HypothesisClass& cls,
                   const Hypothesis& h);
double exact_error(const Distribution& dist, const HypothesisClass& cls,
                   const Committee& committee);

/// Monte Carlo version of exact_error over `samples` fresh test draws.
ErrorEstimate sampled_error(const Distribution& dist, const HypothesisClass& cls,
                            const std::function<double(PointId)>& prob_one,
                            std::uint64_t samples, std::uint64_t seed);

}  // namespace monoadv
