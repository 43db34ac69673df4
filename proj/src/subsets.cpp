// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/subsets.hpp"

#include <limits>

#include "monoadv/error.hpp"

namespace monoadv {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 value = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    value = value * (n - k + i) / i;
    if (value > std::numeric_limits<std::int64_t>::max()) {
      fail(ErrorCode::capacity_exceeded, "binomial coefficient overflows");
    }
  }
  return static_cast<std::uint64_t>(value);
}

std::uint64_t rank_subset(std::span<const std::uint32_t> subset,
                          std::uint64_t n) {
  const std::uint64_t k = subset.size();
  std::uint64_t rank = 0;
  std::uint64_t next = 0;
  for (std::uint64_t pos = 0; pos < k; ++pos) {
    // Count subsets whose element at `pos` is smaller than subset[pos].
    for (std::uint64_t v = next; v < subset[pos]; ++v) {
      rank += binomial(n - 1 - v, k - 1 - pos);
    }
    next = subset[pos] + 1;
  }
  return rank;
}

std::vector<std::uint32_t> unrank_subset(std::uint64_t rank, std::uint64_t n,
                                         std::uint64_t k) {
  if (rank >= binomial(n, k)) {
    fail(ErrorCode::invalid_parameters, "subset rank out of range");
  }
  std::vector<std::uint32_t> out;
  out.reserve(k);
  std::uint64_t v = 0;
  for (std::uint64_t pos = 0; pos < k; ++pos) {
    for (;; ++v) {
      const std::uint64_t block = binomial(n - 1 - v, k - 1 - pos);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(static_cast<std::uint32_t>(v));
    ++v;
  }
  return out;
}

std::uint64_t nth_not_excluded(std::uint64_t k,
                               std::span<const std::uint64_t> excluded) {
  std::uint64_t value = k;
  for (auto e : excluded) {
    if (e <= value) {
      ++value;
    } else {
      break;
    }
  }
  return value;
}

}  // namespace monoadv
