// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace monoadv {

/// n choose k. Throws capacity_exceeded when the value does not fit in 63
/// bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Rank of a sorted k-subset of {0..n-1} in lexicographic order of the
/// sorted element sequences.
std::uint64_t rank_subset(std::span<const std::uint32_t> subset,
                          std::uint64_t n);

/// Inverse of rank_subset.
std::vector<std::uint32_t> unrank_subset(std::uint64_t rank, std::uint64_t n,
                                         std::uint64_t k);

/// The k-th (0-based) element of {0..n-1} \ excluded, with `excluded` sorted
/// and duplicate-free.
std::uint64_t nth_not_excluded(std::uint64_t k,
                               std::span<const std::uint64_t> excluded);

}  // namespace monoadv
