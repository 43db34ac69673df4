// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monoadv/domain.hpp"
#include "monoadv/learners.hpp"
#include "monoadv/pipeline.hpp"
#include "monoadv/stats.hpp"

namespace monoadv {

enum class ExperimentKind {
  oig_lb,          ///< pairing adversary against the randomized OIG
  oig_lb_general,  ///< coupon pairing adversary, k missing points
  majority_lb,     ///< subset-missing adversary against a majority voter
  erm_ub,          ///< worst/first/random ERM error against the ERM bound
  oblivious_oig,   ///< fixed-list oblivious adversary against the OIG
  coupon,          ///< occupancy event with n draws from r elements
};

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view text);

enum class ErmMode { worst, first, random };

std::string_view to_string(ErmMode mode);
ErmMode parse_erm_mode(std::string_view text);

/// Experiment parameters. Zero means "derive" for m, k and r.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::oig_lb;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> m;
  std::uint64_t d = 1;
  std::uint64_t k = 0;
  double c = 4.0;
  double delta = 0.01;
  std::uint64_t copies = 1000;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  VoterKind voter = VoterKind::majority_of_three;
  ErmKind erm = ErmKind::adversarial;
  ErmMode erm_mode = ErmMode::worst;
  std::string adversary = "subset_missing";
  std::uint64_t r = 0;
  std::optional<double> floor;       ///< majority_lb: mean >= floor * d/r
  std::optional<double> ratio_floor; ///< oig_lb_general: ratio in [L, 4L]
};

/// Parameters recomputed from a config; validated on construction.
struct DerivedParams {
  std::uint64_t r = 0;
  std::uint64_t m = 0;
  std::uint64_t k = 0;
  ClassSpec class_spec;
  std::uint64_t scheme_seed = 0;
  std::uint64_t min_distinct = 0;  ///< majority_lb: t of the scheme
};

/// ceil(c n / ln(n / d)), the domain size used by the lower-bound suites.
std::uint64_t lower_bound_domain_size(std::uint64_t n, std::uint64_t d, double c);

/// Checks the config and derives r, m, k and the class. Throws
/// invalid_parameters on violations.
DerivedParams derive(const ExperimentConfig& config);

struct TrialRow {
  std::uint64_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::uint64_t missing = 0;
  bool event = false;
  std::optional<double> error;
  std::optional<double> erm_first_error;
  std::optional<double> erm_worst_error;
  std::optional<std::uint64_t> loo_mistakes;
  std::optional<std::uint64_t> target_outdegree;
  std::uint64_t monotone_violations = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  DerivedParams params;
  std::vector<TrialRow> rows;
  ErrorEstimate estimate;  ///< of the error column, or of the event for coupon
  double event_fraction = 0.0;
  double ratio = 0.0;          ///< mean / (k ln(n/k) / n)
  double baseline_mean = 0.0;  ///< mean erm_first_error where recorded
  double worst_erm_max = 0.0;
  double threshold = 0.0;
  std::string relation;        ///< how mean is compared with threshold
  double reference = 0.0;      ///< closed-form expectation where one exists
  std::uint64_t monotone_violations = 0;
  std::uint64_t audit_failures = 0;
  bool pass = false;
};

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial);

/// The pipeline run behind trial `trial` (empty for coupon).
AdversaryTranscript experiment_transcript(const ExperimentConfig& config,
                                          const DerivedParams& params,
                                          std::uint64_t trial);

/// Runs every trial and the summary. Output does not depend on `workers`.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 1);

/// Worst error over the consistent set: enumerated for small sets, closed
/// form for structured classes under a distribution uniform over x-points.
double worst_consistent_error(const HypothesisClass& cls,
                              std::span<const LabeledExample> data,
                              const Distribution& dist);

/// 100 (d ln(n/d) + ln(1/delta)) / n.
double erm_upper_bound(std::uint64_t n, std::uint64_t d, double delta);

}  // namespace monoadv
