// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "monoadv/domain.hpp"

namespace monoadv {

/// Members of a class consistent with a labeled sample, in canonical order.
/// Structured classes are described by constraints rather than materialized,
/// so sizes like C(r,d)*K stay cheap.
class ConsistentSet {
 public:
  std::uint64_t size() const noexcept {
    return nontarget_ + (target_ok_ ? 1 : 0);
  }
  bool empty() const noexcept { return size() == 0; }
  bool contains_target() const noexcept { return target_ok_; }
  std::uint64_t nontarget_count() const noexcept { return nontarget_; }

  /// Class index of the k-th consistent member (0-based, canonical order).
  std::uint64_t class_index(std::uint64_t k) const;
  Hypothesis at(std::uint64_t k) const { return cls_.at(class_index(k)); }

 private:
  friend class HypothesisClass;
  explicit ConsistentSet(HypothesisClass cls) : cls_(std::move(cls)) {}

  std::uint64_t nontarget_class_index(std::uint64_t k) const;
  std::uint64_t subset_rank(std::uint64_t k) const;

  HypothesisClass cls_;
  bool target_ok_ = false;
  std::uint64_t nontarget_ = 0;

  std::vector<std::uint64_t> table_members_;

  // d-subset constructions: T = forced_ + (d - |forced_|) elements of free_.
  std::vector<std::uint32_t> forced_;
  std::vector<std::uint32_t> free_;
  std::optional<std::uint64_t> fixed_subset_rank_;
  std::uint64_t subset_count_ = 0;
  std::vector<std::uint64_t> excluded_subset_slots_;  // sorted

  std::optional<std::uint64_t> fixed_copy_;
  std::vector<std::uint64_t> excluded_copies_;  // sorted
  std::uint64_t copy_count_ = 0;

  std::optional<std::uint64_t> fixed_pair_;
  std::vector<std::uint64_t> excluded_pairs_;  // sorted
};

}  // namespace monoadv
