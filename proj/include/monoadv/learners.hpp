// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monoadv/domain.hpp"
#include "monoadv/rng.hpp"

namespace monoadv {

enum class ErmKind { first_consistent, random_consistent, adversarial };

std::string_view to_string(ErmKind kind);
ErmKind parse_erm(std::string_view text);

/// First consistent member in canonical order.
Hypothesis erm_first_consistent(const HypothesisClass& cls,
                                std::span<const LabeledExample> data);

/// Uniformly random consistent member.
Hypothesis erm_random_consistent(const HypothesisClass& cls,
                                 std::span<const LabeledExample> data, Rng& rng);

/// For majority_lb classes: if the first y-point in data order is y_T and no
/// x_i with i in T occurs, returns the indicator of T; otherwise h*.
Hypothesis erm_adversarial(const HypothesisClass& cls,
                           std::span<const LabeledExample> data);

Hypothesis run_erm(ErmKind kind, const HypothesisClass& cls,
                   std::span<const LabeledExample> data, Rng& rng);

/// Index lists L_1..L_k over a sample of size N. Indices are 0-based.
struct SubsampleScheme {
  std::string name;
  std::uint64_t sample_size = 0;
  std::vector<std::vector<std::uint32_t>> lists;
  std::uint64_t min_distinct = 0;
};

enum class VoterKind { majority_of_three, bagging, hanneke };

std::string_view to_string(VoterKind kind);
VoterKind parse_voter(std::string_view text);

/// Three contiguous blocks; the remainder goes to the earlier blocks.
SubsampleScheme scheme_majority_of_three(std::uint64_t n);

/// k bootstrap lists of size N drawn with replacement from `rng`.
SubsampleScheme scheme_bagging(std::uint64_t n, std::uint64_t k, Rng& rng);

/// ceil(10 ln(N / delta)).
std::uint64_t bagging_default_k(std::uint64_t n, double delta = 0.01);

/// Recursive three-way scheme with 3^ceil(log4(N/3)) lists of size >= N/2.
SubsampleScheme scheme_hanneke(std::uint64_t n);

/// Builds the scheme for `kind`. Bagging draws its lists from `scheme_seed`.
SubsampleScheme make_scheme(VoterKind kind, std::uint64_t n,
                            std::uint64_t scheme_seed, double delta = 0.01);

/// Pointwise majority of the members; an even split predicts 1.
class Committee {
 public:
  Committee() = default;
  explicit Committee(std::vector<Hypothesis> members)
      : members_(std::move(members)) {}

  std::span<const Hypothesis> members() const noexcept { return members_; }
  Label predict(const Point& x) const;

 private:
  std::vector<Hypothesis> members_;
};

/// Trains the ERM on every S_i = (data[l] for l in L_i) and returns the vote.
/// Member i draws its coins from rng.split(i).
Committee majority_vote(const SubsampleScheme& scheme, ErmKind erm,
                        const HypothesisClass& cls,
                        std::span<const LabeledExample> data, const Rng& rng);

}  // namespace monoadv
