// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "monoadv/bit_pattern.hpp"
#include "monoadv/domain.hpp"
#include "monoadv/orientation.hpp"
#include "monoadv/rng.hpp"

namespace monoadv {

struct OigEdge {
  std::uint32_t u = 0;  ///< endpoint with 0 at `direction`
  std::uint32_t v = 0;  ///< endpoint with 1 at `direction`
  std::uint64_t direction = 0;
};

/// Projection of a class onto an ordered point list, with Hamming-1 edges.
/// Vertices are sorted lexicographically; each carries the smallest class
/// index realizing it, which is what the solver orders by.
struct OneInclusionGraph {
  std::size_t point_count = 0;
  std::vector<BitPattern> vertices;
  std::vector<std::uint64_t> representative;
  std::vector<OigEdge> edges;  ///< sorted by (u, v)

  std::optional<std::uint32_t> find(const BitPattern& pattern) const;
};

/// Graph over `points` (training points followed by the test point when used
/// for prediction).
OneInclusionGraph build_oig(const HypothesisClass& cls,
                            std::span<const PointId> points);
OneInclusionGraph build_oig(const HypothesisClass& cls,
                            std::span<const PointId> train, PointId test);

/// Solver input with vertices renumbered by representative, so the result
/// depends only on the class members and not on the point order.
EdgeList solver_view(const OneInclusionGraph& g);

/// Min-max out-degree orientation of the graph, in graph vertex indices.
Orientation orient(const OneInclusionGraph& g);

/// Plain-text dump: one `vertex` line per vertex and one `edge` line per
/// edge (with its head when an orientation is given).
void dump_graph(std::ostream& out, const OneInclusionGraph& g,
                const Orientation* orientation = nullptr);

/// Number of positions j whose leave-one-out prediction, read off the shared
/// orientation, disagrees with `labels`. Brute force over positions.
std::uint64_t loo_error_sum(const OneInclusionGraph& g, const Orientation& o,
                            const BitPattern& labels);

struct LooAudit {
  std::uint64_t mistakes = 0;
  std::uint64_t target_outdegree = 0;
  std::uint32_t tau = 0;
};

/// Builds and orients the graph over `points`, labels them with h*, and
/// counts leave-one-out mistakes.
LooAudit loo_audit(const HypothesisClass& cls, std::span<const PointId> points);

enum class OigStrategy { any_optimal, random_optimal };

/// One-inclusion graph predictor for a fixed training sample. Per test point
/// only the component of the test edge is materialized; the deterministic
/// mode orients it exactly as orient() orients the full graph.
class OigPredictor {
 public:
  OigPredictor(const HypothesisClass& cls, std::span<const LabeledExample> train);

  /// Prediction of the deterministic optimal orientation.
  Label predict(PointId test) const;

  /// Probability that a uniformly random optimal orientation predicts 1.
  /// Throws capacity_exceeded when the test edge's component has more than
  /// `cap` edges.
  double probability_of_one(PointId test, std::uint32_t cap = 20) const;

  Label predict(PointId test, OigStrategy strategy, Rng& rng) const;

 private:
  struct Local;
  struct TestColumn;

  TestColumn column(PointId test) const;
  Local component(const TestColumn& col, std::uint64_t start_key) const;
  std::uint32_t global_tau(const TestColumn& col) const;
  std::optional<Label> forced(PointId test, const TestColumn* col) const;

  HypothesisClass cls_;
  std::vector<LabeledExample> train_;
  std::unordered_map<PointId, Label> seen_;
  std::vector<std::uint32_t> member_pattern_;
  std::vector<std::vector<std::uint64_t>> pattern_members_;
  std::vector<std::vector<std::uint32_t>> pattern_adj_;
  std::uint32_t target_pattern_ = 0;
  std::vector<std::uint32_t> train_comp_;
  std::vector<std::uint32_t> train_comp_tau_;
  std::vector<std::uint32_t> comps_by_tau_;  ///< descending tau
};

Label oig_predict(const HypothesisClass& cls,
                  std::span<const LabeledExample> train, PointId test,
                  OigStrategy strategy, Rng& rng);

}  // namespace monoadv
