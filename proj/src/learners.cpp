// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monoadv/consistent_set.hpp"
#include "monoadv/error.hpp"
#include "monoadv/subsets.hpp"

namespace monoadv {

std::string_view to_string(ErmKind kind) {
  switch (kind) {
    case ErmKind::first_consistent: return "first";
    case ErmKind::random_consistent: return "random_consistent";
    case ErmKind::adversarial: return "adversarial";
  }
  return "first";
}

ErmKind parse_erm(std::string_view text) {
  if (text == "first" || text == "first_consistent") return ErmKind::first_consistent;
  if (text == "random" || text == "random_consistent") return ErmKind::random_consistent;
  if (text == "adversarial") return ErmKind::adversarial;
  fail(ErrorCode::unknown_id, "unknown erm: " + std::string(text));
}

namespace {

ConsistentSet nonempty_consistent(const HypothesisClass& cls,
                                  std::span<const LabeledExample> data) {
  auto set = cls.consistent(data);
  if (set.empty()) {
    fail(ErrorCode::realizability_violation,
         "no member of " + cls.spec().to_string() + " fits the sample");
  }
  return set;
}

}  // namespace

Hypothesis erm_first_consistent(const HypothesisClass& cls,
                                std::span<const LabeledExample> data) {
  return nonempty_consistent(cls, data).at(0);
}

Hypothesis erm_random_consistent(const HypothesisClass& cls,
                                 std::span<const LabeledExample> data, Rng& rng) {
  const auto set = nonempty_consistent(cls, data);
  return set.at(rng.uniform_below(set.size()));
}

Hypothesis erm_adversarial(const HypothesisClass& cls,
                           std::span<const LabeledExample> data) {
  if (cls.kind() != ClassKind::majority_lb) {
    fail(ErrorCode::invalid_parameters,
         "adversarial erm needs a majority_lb class, got " + cls.spec().to_string());
  }
  const Domain& dom = cls.domain();
  const auto first_y = std::find_if(data.begin(), data.end(), [&](const auto& ex) {
    return dom.point(ex.point).kind == PointKind::y;
  });
  if (first_y == data.end()) return Hypothesis::all_zero();
  const std::uint64_t rank = dom.point(first_y->point).index;
  auto subset = unrank_subset(rank, cls.spec().r, cls.spec().d);
  for (const auto& ex : data) {
    const Point p = dom.point(ex.point);
    if (p.kind == PointKind::x &&
        std::binary_search(subset.begin(), subset.end(), p.index)) {
      return Hypothesis::all_zero();
    }
  }
  return Hypothesis(Hypothesis::SubsetIndicator{std::move(subset), rank});
}

Hypothesis run_erm(ErmKind kind, const HypothesisClass& cls,
                   std::span<const LabeledExample> data, Rng& rng) {
  switch (kind) {
    case ErmKind::first_consistent: return erm_first_consistent(cls, data);
    case ErmKind::random_consistent: return erm_random_consistent(cls, data, rng);
    case ErmKind::adversarial: return erm_adversarial(cls, data);
  }
  return erm_first_consistent(cls, data);
}

// --------------------------------------------------------------- schemes

std::string_view to_string(VoterKind kind) {
  switch (kind) {
    case VoterKind::majority_of_three: return "majority_of_three";
    case VoterKind::bagging: return "bagging";
    case VoterKind::hanneke: return "hanneke";
  }
  return "majority_of_three";
}

VoterKind parse_voter(std::string_view text) {
  if (text == "majority_of_three" || text == "mo3") return VoterKind::majority_of_three;
  if (text == "bagging") return VoterKind::bagging;
  if (text == "hanneke") return VoterKind::hanneke;
  fail(ErrorCode::unknown_id, "unknown voter: " + std::string(text));
}

namespace {

std::uint64_t distinct_count(std::vector<std::uint32_t> list) {
  std::sort(list.begin(), list.end());
  return static_cast<std::uint64_t>(
      std::unique(list.begin(), list.end()) - list.begin());
}

void finish(SubsampleScheme& s) {
  s.min_distinct = s.lists.empty() ? 0 : s.sample_size;
  for (const auto& l : s.lists) s.min_distinct = std::min(s.min_distinct, distinct_count(l));
}

void hanneke_rec(std::vector<std::uint32_t> s, const std::vector<std::uint32_t>& t,
                 std::vector<std::vector<std::uint32_t>>& out) {
  if (s.size() <= 3) {
    s.insert(s.end(), t.begin(), t.end());
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
    return;
  }
  const std::size_t q = s.size() / 4;
  const std::size_t head = s.size() - 3 * q;
  const std::vector<std::uint32_t> s0(s.begin(), s.begin() + head);
  std::vector<std::uint32_t> part[3];
  for (int b = 0; b < 3; ++b) {
    part[b].assign(s.begin() + head + b * q, s.begin() + head + (b + 1) * q);
  }
  for (int skip = 0; skip < 3; ++skip) {
    std::vector<std::uint32_t> rest = t;
    for (int b = 0; b < 3; ++b) {
      if (b != skip) rest.insert(rest.end(), part[b].begin(), part[b].end());
    }
    hanneke_rec(s0, rest, out);
  }
}

}  // namespace

SubsampleScheme scheme_majority_of_three(std::uint64_t n) {
  if (n < 3) fail(ErrorCode::invalid_parameters, "majority_of_three needs N >= 3");
  SubsampleScheme s{"majority_of_three", n, {}, 0};
  std::uint32_t next = 0;
  for (std::uint64_t b = 0; b < 3; ++b) {
    const std::uint64_t len = n / 3 + (b < n % 3 ? 1 : 0);
    std::vector<std::uint32_t> list(len);
    std::iota(list.begin(), list.end(), next);
    next += static_cast<std::uint32_t>(len);
    s.lists.push_back(std::move(list));
  }
  finish(s);
  return s;
}

SubsampleScheme scheme_bagging(std::uint64_t n, std::uint64_t k, Rng& rng) {
  if (n < 1 || k < 1) fail(ErrorCode::invalid_parameters, "bagging needs N >= 1 and k >= 1");
  SubsampleScheme s{"bagging", n, {}, 0};
  s.lists.resize(k);
  for (auto& list : s.lists) {
    list.resize(n);
    for (auto& i : list) i = static_cast<std::uint32_t>(rng.uniform_below(n));
  }
  finish(s);
  return s;
}

std::uint64_t bagging_default_k(std::uint64_t n, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::invalid_parameters, "delta must lie in (0, 1)");
  }
  return static_cast<std::uint64_t>(
      std::ceil(10.0 * std::log(static_cast<double>(n) / delta)));
}

SubsampleScheme scheme_hanneke(std::uint64_t n) {
  if (n < 1) fail(ErrorCode::invalid_parameters, "hanneke needs N >= 1");
  SubsampleScheme s{"hanneke", n, {}, 0};
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  hanneke_rec(std::move(all), {}, s.lists);
  finish(s);
  return s;
}

SubsampleScheme make_scheme(VoterKind kind, std::uint64_t n,
                            std::uint64_t scheme_seed, double delta) {
  switch (kind) {
    case VoterKind::majority_of_three: return scheme_majority_of_three(n);
    case VoterKind::hanneke: return scheme_hanneke(n);
    case VoterKind::bagging: {
      Rng rng(scheme_seed);
      return scheme_bagging(n, bagging_default_k(n, delta), rng);
    }
  }
  return scheme_majority_of_three(n);
}

// ------------------------------------------------------------- committee

Label Committee::predict(const Point& x) const {
  std::size_t ones = 0;
  for (const auto& h : members_) ones += h.label(x);
  return 2 * ones >= members_.size() ? 1 : 0;
}

Committee majority_vote(const SubsampleScheme& scheme, ErmKind erm,
                        const HypothesisClass& cls,
                        std::span<const LabeledExample> data, const Rng& rng) {
  if (scheme.sample_size != data.size()) {
    fail(ErrorCode::invalid_parameters,
         "scheme built for N=" + std::to_string(scheme.sample_size) +
             " but the sample has " + std::to_string(data.size()) + " examples");
  }
  std::vector<Hypothesis> members;
  members.reserve(scheme.lists.size());
  Dataset sub;
  for (std::size_t i = 0; i < scheme.lists.size(); ++i) {
    sub.clear();
    for (auto idx : scheme.lists[i]) sub.push_back(data[idx]);
    Rng member_rng = rng.split(i);
    members.push_back(run_erm(erm, cls, sub, member_rng));
  }
  return Committee(std::move(members));
}

}  // namespace monoadv
