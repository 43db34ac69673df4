// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monoadv/error.hpp"
#include "monoadv/subsets.hpp"

namespace monoadv {

// ---------------------------------------------------------- Distribution

Distribution Distribution::uniform(std::vector<PointId> support) {
  if (support.empty()) {
    fail(ErrorCode::invalid_parameters, "distribution support is empty");
  }
  Distribution d;
  const double w = 1.0 / static_cast<double>(support.size());
  d.weights_.assign(support.size(), w);
  d.support_ = std::move(support);
  d.uniform_ = true;
  return d;
}

Distribution Distribution::weighted(std::vector<PointId> support,
                                    std::vector<double> weights) {
  if (support.empty() || support.size() != weights.size()) {
    fail(ErrorCode::invalid_parameters,
         "distribution needs a nonempty support with one weight per point");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) fail(ErrorCode::invalid_parameters, "negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    fail(ErrorCode::invalid_parameters, "weights do not sum to 1");
  }
  Distribution d;
  d.support_ = std::move(support);
  d.weights_ = std::move(weights);
  d.cumulative_.resize(d.weights_.size());
  std::partial_sum(d.weights_.begin(), d.weights_.end(), d.cumulative_.begin());
  d.uniform_ = std::all_of(d.weights_.begin(), d.weights_.end(),
                           [&](double w) { return w == d.weights_.front(); });
  return d;
}

PointId Distribution::sample(Rng& rng) const {
  if (uniform_) return support_[rng.uniform_below(support_.size())];
  const double u = rng.uniform01() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return support_[static_cast<std::size_t>(it - cumulative_.begin())];
}

// ----------------------------------------------------------- adversaries

SubsetMissingAdversary::SubsetMissingAdversary(Domain domain, std::uint64_t m)
    : domain_(domain), m_(m) {
  if (domain_.subset_size() == 0) {
    fail(ErrorCode::invalid_parameters,
         "subset_missing adversary needs a d-subset domain");
  }
}

std::vector<PointId> SubsetMissingAdversary::corrupt(
    std::span<const PointId> clean, Rng&) const {
  const std::uint64_t r = domain_.x_count();
  const std::uint64_t d = domain_.subset_size();
  std::vector<char> seen(r, 0);
  for (auto id : clean) {
    const Point p = domain_.point(id);
    if (p.kind == PointKind::x) seen[p.index] = 1;
  }
  // The lexicographically smallest d-subset of the unseen indices is their
  // d smallest elements.
  std::vector<std::uint32_t> subset;
  for (std::uint32_t i = 0; i < r && subset.size() < d; ++i) {
    if (!seen[i]) subset.push_back(i);
  }
  const PointId out = subset.size() == d ? domain_.y(rank_subset(subset, r))
                                         : domain_.x(0);
  return std::vector<PointId>(m_, out);
}

PairingAdversary::PairingAdversary(Domain domain) : domain_(domain) {}

std::vector<PointId> PairingAdversary::corrupt(std::span<const PointId> clean,
                                               Rng&) const {
  std::vector<PointId> out;
  out.reserve(clean.size());
  for (auto id : clean) {
    const Point p = domain_.point(id);
    if (p.kind != PointKind::x) {
      fail(ErrorCode::domain_mismatch, "pairing adversary saw a non-x point");
    }
    out.push_back(domain_.y(p.index));
  }
  return out;
}

CouponPairingAdversary::CouponPairingAdversary(Domain domain, std::uint64_t m)
    : domain_(domain), m_(m) {
  if (m_ != domain_.x_count()) {
    fail(ErrorCode::invalid_parameters, "coupon_pairing adversary needs m = r");
  }
}

std::vector<PointId> CouponPairingAdversary::corrupt(
    std::span<const PointId> clean, Rng&) const {
  std::vector<char> seen(domain_.x_count(), 0);
  for (auto id : clean) {
    const Point p = domain_.point(id);
    if (p.kind != PointKind::x) {
      fail(ErrorCode::domain_mismatch, "coupon_pairing adversary saw a non-x point");
    }
    seen[p.index] = 1;
  }
  std::vector<PointId> out;
  out.reserve(m_);
  for (std::uint64_t i = 0; i < seen.size(); ++i) {
    if (seen[i]) out.push_back(domain_.y(i));
  }
  const PointId pad = out.empty() ? domain_.y(0) : out.front();
  out.resize(m_, pad);
  return out;
}

std::vector<PointId> FixedListAdversary::corrupt(std::span<const PointId>,
                                                 Rng&) const {
  return points_;
}

// -------------------------------------------------------------- pipeline

StageSeeds StageSeeds::from_master(std::uint64_t master_seed) {
  return {derive_seed(master_seed, 1), derive_seed(master_seed, 2),
          derive_seed(master_seed, 3)};
}

std::vector<PointId> AdversaryTranscript::clean_points() const {
  std::vector<PointId> out;
  out.reserve(clean.size());
  for (const auto& ex : clean) out.push_back(ex.point);
  return out;
}

std::vector<std::uint64_t> uniform_permutation(std::uint64_t size, Rng& rng) {
  std::vector<std::uint64_t> perm(size);
  std::iota(perm.begin(), perm.end(), std::uint64_t{0});
  for (std::uint64_t i = size; i > 1; --i) {
    const std::uint64_t j = rng.uniform_below(i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

namespace {

std::vector<PointId> draw_clean(const Distribution& dist, std::uint64_t n,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PointId> out(n);
  for (auto& p : out) p = dist.sample(rng);
  return out;
}

std::vector<PointId> call_adversary(const Adversary& adversary,
                                    std::span<const PointId> clean,
                                    std::uint64_t m, std::uint64_t seed) {
  Rng rng(seed);
  auto out = adversary.corrupt(clean, rng);
  if (out.size() != m) {
    fail(ErrorCode::protocol_violation,
         "adversary " + adversary.id() + " produced " + std::to_string(out.size()) +
             " points, expected m=" + std::to_string(m));
  }
  return out;
}

AdversaryTranscript assemble(const HypothesisClass& cls,
                             const Adversary& adversary,
                             const std::vector<PointId>& clean,
                             const std::vector<PointId>& corrupted,
                             const StageSeeds& seeds, std::uint64_t master_seed) {
  AdversaryTranscript t;
  t.n = clean.size();
  t.m = corrupted.size();
  t.master_seed = master_seed;
  t.adversary_id = adversary.id();
  t.class_spec = cls.spec();
  for (auto p : clean) t.clean.push_back({p, cls.target_label(p)});
  for (auto p : corrupted) t.corrupted.push_back({p, cls.target_label(p)});
  Rng rng(seeds.shuffle);
  t.permutation = uniform_permutation(t.n + t.m, rng);
  t.shuffled.reserve(t.n + t.m);
  for (auto src : t.permutation) {
    t.shuffled.push_back(src < t.n ? t.clean[src] : t.corrupted[src - t.n]);
  }
  return t;
}

}  // namespace

AdversaryTranscript run_adaptive(const Distribution& dist,
                                 const HypothesisClass& cls,
                                 const Adversary& adversary, std::uint64_t n,
                                 std::uint64_t m, const StageSeeds& seeds,
                                 std::uint64_t master_seed) {
  if (n < 1) fail(ErrorCode::invalid_parameters, "pipeline needs n >= 1");
  const auto clean = draw_clean(dist, n, seeds.clean);
  const auto corrupted = call_adversary(adversary, clean, m, seeds.adversary);
  return assemble(cls, adversary, clean, corrupted, seeds, master_seed);
}

AdversaryTranscript run_oblivious(const Distribution& dist,
                                  const HypothesisClass& cls,
                                  const Adversary& adversary, std::uint64_t n,
                                  std::uint64_t m, const StageSeeds& seeds,
                                  std::uint64_t master_seed) {
  if (n < 1) fail(ErrorCode::invalid_parameters, "pipeline needs n >= 1");
  const auto corrupted = call_adversary(adversary, {}, m, seeds.adversary);
  const auto clean = draw_clean(dist, n, seeds.clean);
  auto t = assemble(cls, adversary, clean, corrupted, seeds, master_seed);
  t.adversary_first = true;
  return t;
}

}  // namespace monoadv
