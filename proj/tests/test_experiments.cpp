// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "monoadv/error.hpp"
#include "monoadv/experiments.hpp"

using namespace monoadv;

namespace {

ExperimentConfig config(ExperimentKind kind, std::uint64_t n, std::uint64_t trials, std::uint64_t seed = 7) {
  ExperimentConfig c;
  c.experiment = kind;
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

ErrorCode code_of(const ExperimentConfig& c) {
  try {
    derive(c);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io_error;
}

}  // namespace

TEST(Derive, DomainSizes) {
  EXPECT_EQ(lower_bound_domain_size(300, 1, 4.0), 211u);
  EXPECT_EQ(lower_bound_domain_size(1000, 1, 4.0), 580u);
  const auto g = derive(config(ExperimentKind::oig_lb_general, 250, 1));
  EXPECT_EQ(g.k, 16u);
  EXPECT_EQ(g.r, static_cast<std::uint64_t>(std::ceil(4.0 * 250 / std::log(250.0 / 16))));
  EXPECT_EQ(g.m, g.r);
  const auto o = derive(config(ExperimentKind::oig_lb, 200, 1));
  EXPECT_EQ(o.r, 400u);
  EXPECT_EQ(o.m, 200u);
}

TEST(Derive, MajorityCorruptionBudget) {
  for (std::uint64_t n : {30u, 100u, 300u, 1000u}) {
    const auto p = derive(config(ExperimentKind::majority_lb, n, 1));
    // Three blocks of the N = n + m sample; the smallest is floor(N/3).
    std::uint64_t m = 1;
    while (m * ((n + m) / 3) < 2 * n) ++m;
    EXPECT_EQ(p.m, m) << n;
    EXPECT_EQ(p.min_distinct, (n + m) / 3);
  }
  EXPECT_EQ(derive(config(ExperimentKind::majority_lb, 300, 1)).m, 6u);
}

TEST(Derive, InvalidParameters) {
  auto g = config(ExperimentKind::oig_lb_general, 20, 1);
  g.k = 6;
  EXPECT_EQ(code_of(g), ErrorCode::invalid_parameters);
  auto o = config(ExperimentKind::oig_lb, 20, 1);
  o.m = 3;
  EXPECT_EQ(code_of(o), ErrorCode::invalid_parameters);
  auto c = config(ExperimentKind::coupon, 3, 1);
  EXPECT_EQ(code_of(c), ErrorCode::invalid_parameters);
  auto e = config(ExperimentKind::erm_ub, 50, 1);
  e.adversary = "teleport";
  EXPECT_EQ(code_of(e), ErrorCode::unknown_id);
  auto z = config(ExperimentKind::oig_lb, 0, 1);
  EXPECT_EQ(code_of(z), ErrorCode::invalid_parameters);
  auto t = config(ExperimentKind::oig_lb, 5, 0);
  EXPECT_EQ(code_of(t), ErrorCode::invalid_parameters);
  auto ob = config(ExperimentKind::oblivious_oig, 5, 1);
  ob.m = 11;
  EXPECT_EQ(code_of(ob), ErrorCode::invalid_parameters);
}

TEST(Experiments, SingleExampleGivesQuarterError) {
  const auto res = run_experiment(config(ExperimentKind::oig_lb, 1, 50));
  for (const auto& row : res.rows) EXPECT_DOUBLE_EQ(*row.error, 0.25);
  EXPECT_DOUBLE_EQ(res.estimate.mean, 0.25);
  EXPECT_TRUE(res.pass);
}

TEST(Experiments, PairingErrorIsHalfTheMissingMass) {
  const auto res = run_experiment(config(ExperimentKind::oig_lb, 40, 200));
  const double r = static_cast<double>(res.params.r);
  for (const auto& row : res.rows) {
    EXPECT_NEAR(*row.error, static_cast<double>(row.missing) / (2 * r), 1e-15);
    EXPECT_LE(*row.erm_first_error, 1.0 / r);
  }
  EXPECT_NEAR(res.reference, std::pow(1 - 1 / 80.0, 40) / 2, 1e-15);
  EXPECT_NEAR(res.estimate.mean, res.reference, 4 * res.estimate.se);
  EXPECT_EQ(res.monotone_violations, 0u);
}

TEST(Experiments, NoCorruptionsMeansNoMajorityError) {
  auto c = config(ExperimentKind::majority_lb, 60, 40);
  c.m = 0;
  const auto res = run_experiment(c);
  EXPECT_EQ(res.estimate.mean, 0.0);
  EXPECT_FALSE(res.pass);
}

TEST(Experiments, MajorityErrorsAreZeroOrSubsetMass) {
  const auto res = run_experiment(config(ExperimentKind::majority_lb, 120, 200));
  const double dr = 1.0 / static_cast<double>(res.params.r);
  for (const auto& row : res.rows) {
    EXPECT_TRUE(*row.error == 0.0 || *row.error == dr) << *row.error;
    EXPECT_EQ(*row.erm_worst_error, row.missing >= 1 ? dr : 0.0);
  }
  EXPECT_GE(res.estimate.mean, 0.25 * dr);
}

TEST(Experiments, ErmModes) {
  auto c = config(ExperimentKind::erm_ub, 200, 60);
  c.d = 2;
  c.erm_mode = ErmMode::first;
  const auto first = run_experiment(c);
  for (const auto& row : first.rows) EXPECT_EQ(*row.error, 0.0);
  c.erm_mode = ErmMode::worst;
  const auto worst = run_experiment(c);
  const double ceiling = 2.0 / static_cast<double>(worst.params.r);
  for (const auto& row : worst.rows) EXPECT_EQ(*row.error, row.missing >= 2 ? ceiling : 0.0);
  EXPECT_TRUE(worst.pass);
  c.erm_mode = ErmMode::random;
  for (const auto& row : run_experiment(c).rows) EXPECT_TRUE(*row.error == 0.0 || *row.error == ceiling);
}

TEST(Experiments, WorstConsistentMatchesEnumeration) {
  const auto cls = HypothesisClass::majority_lb(9, 2);
  const auto x = cls.domain().x_points();
  const auto uniform = Distribution::uniform(x);
  const auto spelled = Distribution::weighted(x, std::vector<double>(9, 1.0 / 9));
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Dataset data;
    const auto len = rng.uniform_below(10);
    for (std::uint64_t i = 0; i < len; ++i) data.push_back({rng.uniform_below(cls.domain().size()), 0});
    EXPECT_NEAR(worst_consistent_error(cls, data, uniform), worst_consistent_error(cls, data, spelled), 1e-12);
  }
}

TEST(Experiments, CouponCertainEvent) {
  auto c = config(ExperimentKind::coupon, 1, 30);
  c.r = 2;
  const auto res = run_experiment(c);
  for (const auto& row : res.rows) EXPECT_EQ(row.missing, 1u);
  EXPECT_EQ(res.event_fraction, 1.0);
}

TEST(Experiments, CouponMissingMatchesOccupancyMean) {
  auto c = config(ExperimentKind::coupon, 100, 2000);
  c.r = 50;
  const auto res = run_experiment(c);
  double mean = 0;
  for (const auto& row : res.rows) mean += static_cast<double>(row.missing);
  mean /= 2000;
  const double expect = 50 * std::pow(1 - 1 / 50.0, 100);
  EXPECT_NEAR(mean, expect, 0.15);
}

TEST(Experiments, ObliviousAuditsHold) {
  auto c = config(ExperimentKind::oblivious_oig, 30, 100);
  const auto res = run_experiment(c);
  for (const auto& row : res.rows) {
    EXPECT_EQ(*row.loo_mistakes, *row.target_outdegree);
    EXPECT_LE(*row.loo_mistakes, 1u);
  }
  EXPECT_EQ(res.audit_failures, 0u);
  EXPECT_TRUE(res.pass);
  c.m = 0;
  EXPECT_TRUE(run_experiment(c).pass);
}

TEST(Experiments, GeneralPairingBeatsBaseline) {
  const auto res = run_experiment(config(ExperimentKind::oig_lb_general, 64, 200));
  EXPECT_GT(res.estimate.mean, res.baseline_mean);
  EXPECT_GE(res.event_fraction, 0.5);
  const double r = static_cast<double>(res.params.r);
  for (const auto& row : res.rows) EXPECT_NEAR(*row.error, static_cast<double>(row.missing) / (2 * r), 1e-15);
}

TEST(Experiments, TranscriptsAreReproducible) {
  const auto c = config(ExperimentKind::majority_lb, 90, 5);
  const auto p = derive(c);
  const auto a = experiment_transcript(c, p, 3);
  const auto b = experiment_transcript(c, p, 3);
  EXPECT_EQ(a.shuffled, b.shuffled);
  EXPECT_NE(a.shuffled, experiment_transcript(c, p, 4).shuffled);
  EXPECT_EQ(a.master_seed, trial_seed(7, 3));
}
