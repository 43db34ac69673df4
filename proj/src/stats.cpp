// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "monoadv/error.hpp"

namespace monoadv {

ErrorEstimate summarize(std::span<const double> samples, std::uint64_t seed) {
  ErrorEstimate est;
  est.trials = samples.size();
  est.seed = seed;
  if (samples.empty()) return est;
  double sum = 0.0;
  for (double x : samples) {
    sum += x;
    est.max = std::max(est.max, x);
  }
  const double n = static_cast<double>(samples.size());
  est.mean = sum / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    est.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  est.ci_low = std::clamp(est.mean - kZ99 * est.se, 0.0, 1.0);
  est.ci_high = std::clamp(est.mean + kZ99 * est.se, 0.0, 1.0);
  return est;
}

double chi_square_pvalue(std::span<const std::uint64_t> observed,
                         std::span<const double> expected) {
  if (observed.size() != expected.size() || observed.size() < 2) {
    fail(ErrorCode::invalid_parameters, "chi-square needs matching bins, at least two");
  }
  double total = 0.0;
  for (auto o : observed) total += static_cast<double>(o);
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = expected[i] * total;
    if (!(e > 0.0)) fail(ErrorCode::invalid_parameters, "empty chi-square bin");
    const double diff = static_cast<double>(observed[i]) - e;
    stat += diff * diff / e;
  }
  const boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

double exact_error(const Distribution& dist, const HypothesisClass& cls,
                   const std::function<double(PointId)>& prob_one) {
  const auto support = dist.support();
  const auto weights = dist.weights();
  double err = 0.0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const double p1 = prob_one(support[i]);
    const double miss = cls.target_label(support[i]) ? 1.0 - p1 : p1;
    err += dist.is_uniform() ? miss : weights[i] * miss;
  }
  return dist.is_uniform() ? err / static_cast<double>(support.size()) : err;
}

double exact_error(const Distribution& dist, const HypothesisClass& cls,
                   const Hypothesis& h) {
  return exact_error(dist, cls, [&](PointId x) -> double { return cls.evaluate(h, x); });
}

double exact_error(const Distribution& dist, const HypothesisClass& cls,
                   const Committee& committee) {
  return exact_error(dist, cls, [&](PointId x) -> double {
    return committee.predict(cls.domain().point(x));
  });
}

ErrorEstimate sampled_error(const Distribution& dist, const HypothesisClass& cls,
                            const std::function<double(PointId)>& prob_one,
                            std::uint64_t samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> miss(samples);
  for (auto& m : miss) {
    const PointId x = dist.sample(rng);
    const Label predicted = rng.uniform01() < prob_one(x) ? 1 : 0;
    m = predicted != cls.target_label(x) ? 1.0 : 0.0;
  }
  return summarize(miss, seed);
}

}  // namespace monoadv
