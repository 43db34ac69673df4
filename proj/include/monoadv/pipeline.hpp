// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "monoadv/domain.hpp"
#include "monoadv/rng.hpp"

namespace monoadv {

/// Finite distribution over domain points.
class Distribution {
 public:
  static Distribution uniform(std::vector<PointId> support);
  static Distribution weighted(std::vector<PointId> support,
                               std::vector<double> weights);

  std::span<const PointId> support() const noexcept { return support_; }
  std::span<const double> weights() const noexcept { return weights_; }
  bool is_uniform() const noexcept { return uniform_; }

  PointId sample(Rng& rng) const;

 private:
  std::vector<PointId> support_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  bool uniform_ = true;
};

/// A monotone adversary maps the clean points to m extra points; the
/// pipeline labels them with h*. Oblivious adversaries are called with an
/// empty clean sample before clean sampling happens.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual std::string id() const = 0;
  virtual bool oblivious() const = 0;
  virtual std::vector<PointId> corrupt(std::span<const PointId> clean,
                                       Rng& rng) const = 0;
};

/// Emits m copies of y_T for the lexicographically smallest d-subset T with
/// no x_i (i in T) among the clean points, or m copies of x_1 when no such T
/// exists.
class SubsetMissingAdversary final : public Adversary {
 public:
  SubsetMissingAdversary(Domain domain, std::uint64_t m);
  std::string id() const override { return "subset_missing"; }
  bool oblivious() const override { return false; }
  std::vector<PointId> corrupt(std::span<const PointId> clean,
                               Rng& rng) const override;

 private:
  Domain domain_;
  std::uint64_t m_;
};

/// One y_i per clean occurrence of x_i, so m = n.
class PairingAdversary final : public Adversary {
 public:
  explicit PairingAdversary(Domain domain);
  std::string id() const override { return "pairing"; }
  bool oblivious() const override { return false; }
  std::vector<PointId> corrupt(std::span<const PointId> clean,
                               Rng& rng) const override;

 private:
  Domain domain_;
};

/// y_i once for every distinct x_i among the clean points (ascending i),
/// padded with repeats of the first emitted point (y_1 if none) up to m = r.
class CouponPairingAdversary final : public Adversary {
 public:
  CouponPairingAdversary(Domain domain, std::uint64_t m);
  std::string id() const override { return "coupon_pairing"; }
  bool oblivious() const override { return false; }
  std::vector<PointId> corrupt(std::span<const PointId> clean,
                               Rng& rng) const override;

 private:
  Domain domain_;
  std::uint64_t m_;
};

/// Oblivious adversary that always emits the same list.
class FixedListAdversary final : public Adversary {
 public:
  explicit FixedListAdversary(std::vector<PointId> points)
      : points_(std::move(points)) {}
  std::string id() const override { return "fixed_list"; }
  bool oblivious() const override { return true; }
  std::vector<PointId> corrupt(std::span<const PointId> clean,
                               Rng& rng) const override;

 private:
  std::vector<PointId> points_;
};

/// Independent seeds for the three pipeline stages.
struct StageSeeds {
  std::uint64_t clean = 0;
  std::uint64_t adversary = 0;
  std::uint64_t shuffle = 0;

  static StageSeeds from_master(std::uint64_t master_seed);
};

/// Audit record of one pipeline run.
struct AdversaryTranscript {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t master_seed = 0;
  std::string adversary_id;
  ClassSpec class_spec;
  bool adversary_first = false;  ///< oblivious run: adversary invoked first

  std::vector<LabeledExample> clean;
  std::vector<LabeledExample> corrupted;
  /// shuffled[p] = (clean ++ corrupted)[permutation[p]]
  std::vector<std::uint64_t> permutation;
  std::vector<LabeledExample> shuffled;

  std::vector<PointId> clean_points() const;
};

AdversaryTranscript run_adaptive(const Distribution& dist,
                                 const HypothesisClass& cls,
                                 const Adversary& adversary, std::uint64_t n,
                                 std::uint64_t m, const StageSeeds& seeds,
                                 std::uint64_t master_seed = 0);

AdversaryTranscript run_oblivious(const Distribution& dist,
                                  const HypothesisClass& cls,
                                  const Adversary& adversary, std::uint64_t n,
                                  std::uint64_t m, const StageSeeds& seeds,
                                  std::uint64_t master_seed = 0);

/// Uniform permutation of {0..size-1} by Fisher-Yates.
std::vector<std::uint64_t> uniform_permutation(std::uint64_t size, Rng& rng);

// ------------------------------------------------------ transcript files

/// One line of a serialized transcript body.
struct TranscriptEntry {
  std::string role;  ///< "clean" or "corrupted"
  PointId point = 0;
  Label label = 0;
  std::uint64_t position = 0;  ///< index in the shuffled dataset
  std::size_t line = 0;
};

/// Transcript as read from disk, before any validation.
struct TranscriptFile {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 0;
  std::string adversary_id;
  std::string class_spec;
  std::vector<TranscriptEntry> entries;
};

void write_transcript(std::ostream& out, const AdversaryTranscript& t);
TranscriptFile read_transcript(std::istream& in);

struct AuditViolation {
  std::string code;  ///< monotonicity, arity, permutation, domain
  std::string message;
};

/// Re-checks labeling by h*, clean/corrupted counts against the header, and
/// that the shuffle positions form a permutation.
std::vector<AuditViolation> audit_transcript(const TranscriptFile& file);

}  // namespace monoadv
