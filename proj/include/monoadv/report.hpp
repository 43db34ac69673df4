// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "monoadv/experiments.hpp"

namespace monoadv {

/// Shortest decimal that round-trips, independent of locale and stream state.
std::string format_double(double value);

/// Column order of the per-trial CSV.
inline constexpr const char* kTrialColumns =
    "trial,trial_seed,n,m,r,missing,event,error,erm_first_error,"
    "erm_worst_error,loo_mistakes,h_star_outdegree";

/// Column order of the summary CSV.
inline constexpr const char* kSummaryColumns =
    "experiment,n,m,r,d,k,trials,seed,mean,se,ci_low,ci_high,max_error,"
    "event_fraction,ratio,baseline_mean,worst_erm_max,reference,threshold,"
    "relation,monotone_violations,audit_failures,pass";

void write_trials_csv(std::ostream& out, const ExperimentResult& result);
void write_summary_row(std::ostream& out, const ExperimentResult& result);

/// Mean error (with 99% interval whiskers) against n.
void write_svg(std::ostream& out, std::span<const ExperimentResult> results);

struct RunManifest {
  std::string config_path;
  std::string resolved_config;
  std::uint64_t master_seed = 0;
  std::string out_dir;
  std::vector<std::string> files;
};

void write_manifest(std::ostream& out, const RunManifest& manifest);

}  // namespace monoadv
