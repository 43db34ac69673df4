// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "monoadv/experiments.hpp"

namespace monoadv {

inline constexpr std::string_view kVersion = "0.1.0";

/// A parsed run: one experiment config per value of n.
struct RunConfig {
  std::vector<ExperimentConfig> experiments;
  std::vector<DerivedParams> derived;
  std::uint64_t transcripts = 0;  ///< pipeline transcripts dumped per n
};

/// Parses a flat key=value config. Lines starting with '#' and blank lines
/// are ignored; `n` may be a comma-separated list. Every parameter is
/// validated (including derived ones) before this returns.
RunConfig parse_config(std::string_view text);

/// The config with every default filled in, one key=value per line in a
/// fixed key order.
std::string resolved_config(const RunConfig& run);

}  // namespace monoadv
