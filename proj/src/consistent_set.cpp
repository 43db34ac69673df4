// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/consistent_set.hpp"

#include <algorithm>
#include <set>

#include "monoadv/error.hpp"
#include "monoadv/subsets.hpp"

namespace monoadv {

namespace {

template <class T>
std::vector<T> to_vector(const std::set<T>& s) {
  return {s.begin(), s.end()};
}

bool intersects(const std::set<std::uint32_t>& a, const std::set<std::uint32_t>& b) {
  for (auto v : a) {
    if (b.count(v)) return true;
  }
  return false;
}

}  // namespace

ConsistentSet HypothesisClass::consistent(
    std::span<const LabeledExample> data) const {
  ConsistentSet set(*this);
  std::vector<Point> points;
  points.reserve(data.size());
  for (const auto& ex : data) points.push_back(domain_.point(ex.point));

  if (spec_.kind == ClassKind::table) {
    for (std::uint64_t i = 0; i < size_; ++i) {
      const auto& row = (*table_)[i];
      bool ok = true;
      for (const auto& ex : data) {
        if (row.test(ex.point) != (ex.label != 0)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (i == 0) {
        set.target_ok_ = true;
      } else {
        set.table_members_.push_back(i);
      }
    }
    set.nontarget_ = set.table_members_.size();
    return set;
  }

  set.target_ok_ = std::all_of(data.begin(), data.end(),
                               [](const LabeledExample& ex) { return ex.label == 0; });

  std::set<std::uint32_t> x_pos, x_neg;
  std::set<std::uint64_t> y_pos, y_neg, z_pos, z_neg;
  for (std::size_t k = 0; k < data.size(); ++k) {
    const Point& p = points[k];
    const bool one = data[k].label != 0;
    switch (p.kind) {
      case PointKind::x:
        (one ? x_pos : x_neg).insert(static_cast<std::uint32_t>(p.index));
        break;
      case PointKind::y: (one ? y_pos : y_neg).insert(p.index); break;
      case PointKind::z: (one ? z_pos : z_neg).insert(p.index); break;
    }
  }

  if (spec_.kind == ClassKind::oig_lb) {
    // h_i is 1 on x_i and y_i only.
    std::set<std::uint64_t> pos(x_pos.begin(), x_pos.end());
    pos.insert(y_pos.begin(), y_pos.end());
    std::set<std::uint64_t> neg(x_neg.begin(), x_neg.end());
    neg.insert(y_neg.begin(), y_neg.end());
    if (pos.size() >= 2) return set;
    if (pos.size() == 1) {
      const auto i = *pos.begin();
      if (!neg.count(i)) {
        set.fixed_pair_ = i;
        set.nontarget_ = 1;
      }
      return set;
    }
    set.excluded_pairs_ = to_vector(neg);
    set.nontarget_ = spec_.r - neg.size();
    return set;
  }

  // d-subset constructions.
  const std::uint64_t r = spec_.r;
  const std::uint64_t d = spec_.d;
  if (intersects(x_pos, x_neg) || x_pos.size() > d) return set;
  if (spec_.kind == ClassKind::majority_lb && !y_pos.empty()) return set;

  set.forced_.assign(x_pos.begin(), x_pos.end());
  for (std::uint32_t i = 0; i < r; ++i) {
    if (!x_pos.count(i) && !x_neg.count(i)) set.free_.push_back(i);
  }
  const std::uint64_t need = d - x_pos.size();

  if (spec_.kind == ClassKind::majority_lb) {
    set.subset_count_ = binomial(set.free_.size(), need);
    set.nontarget_ = set.subset_count_;
    return set;
  }

  // majority_lb_rand: y_T is 0 only under T's own copies, z_j is 1 only under
  // copy j.
  auto admissible = [&](const std::vector<std::uint32_t>& subset) {
    for (auto f : set.forced_) {
      if (!std::binary_search(subset.begin(), subset.end(), f)) return false;
    }
    for (auto v : subset) {
      if (x_neg.count(v)) return false;
    }
    return true;
  };

  if (y_neg.size() >= 2) return set;
  if (y_neg.size() == 1) {
    const auto rank = *y_neg.begin();
    if (y_pos.count(rank) || !admissible(unrank_subset(rank, r, d))) return set;
    set.fixed_subset_rank_ = rank;
    set.subset_count_ = 1;
  } else {
    const std::uint64_t total = binomial(set.free_.size(), need);
    std::vector<std::uint64_t> slots;
    for (auto rank : y_pos) {
      const auto subset = unrank_subset(rank, r, d);
      if (!admissible(subset)) continue;
      std::vector<std::uint32_t> positions;
      for (auto v : subset) {
        if (std::binary_search(set.forced_.begin(), set.forced_.end(), v)) continue;
        positions.push_back(static_cast<std::uint32_t>(
            std::lower_bound(set.free_.begin(), set.free_.end(), v) - set.free_.begin()));
      }
      slots.push_back(rank_subset(positions, set.free_.size()));
    }
    std::sort(slots.begin(), slots.end());
    set.excluded_subset_slots_ = std::move(slots);
    set.subset_count_ = total - set.excluded_subset_slots_.size();
  }

  const std::uint64_t copies = spec_.copies;
  if (z_pos.size() >= 2) return set;
  if (z_pos.size() == 1) {
    const auto j = *z_pos.begin();
    if (z_neg.count(j)) return set;
    set.fixed_copy_ = j;
    set.copy_count_ = 1;
  } else {
    set.excluded_copies_ = to_vector(z_neg);
    set.copy_count_ = copies - z_neg.size();
  }
  if (set.copy_count_ != 0 &&
      set.subset_count_ > (std::uint64_t{1} << 62) / set.copy_count_) {
    fail(ErrorCode::capacity_exceeded, "consistent set too large");
  }
  set.nontarget_ = set.subset_count_ * set.copy_count_;
  return set;
}

std::uint64_t ConsistentSet::class_index(std::uint64_t k) const {
  if (k >= size()) {
    fail(ErrorCode::invalid_parameters, "consistent-set index out of range");
  }
  if (target_ok_) {
    if (k == 0) return cls_.target_index();
    --k;
  }
  return nontarget_class_index(k);
}

std::uint64_t ConsistentSet::subset_rank(std::uint64_t k) const {
  if (fixed_subset_rank_) return *fixed_subset_rank_;
  const std::uint64_t slot = nth_not_excluded(k, excluded_subset_slots_);
  const std::uint64_t need = cls_.spec().d - forced_.size();
  const auto chosen = unrank_subset(slot, free_.size(), need);
  std::vector<std::uint32_t> subset = forced_;
  for (auto pos : chosen) subset.push_back(free_[pos]);
  std::sort(subset.begin(), subset.end());
  return rank_subset(subset, cls_.spec().r);
}

std::uint64_t ConsistentSet::nontarget_class_index(std::uint64_t k) const {
  switch (cls_.kind()) {
    case ClassKind::table: return table_members_[k];
    case ClassKind::oig_lb:
      return 1 + (fixed_pair_ ? *fixed_pair_ : nth_not_excluded(k, excluded_pairs_));
    case ClassKind::majority_lb: return 1 + subset_rank(k);
    case ClassKind::majority_lb_rand: {
      const std::uint64_t rank = subset_rank(k / copy_count_);
      const std::uint64_t c = k % copy_count_;
      const std::uint64_t copy =
          fixed_copy_ ? *fixed_copy_ : nth_not_excluded(c, excluded_copies_);
      return 1 + rank * cls_.spec().copies + copy;
    }
  }
  return 0;
}

}  // namespace monoadv
