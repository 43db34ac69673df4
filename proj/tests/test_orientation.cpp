// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>

#include "monoadv/error.hpp"
#include "monoadv/orientation.hpp"
#include "monoadv/rng.hpp"

using namespace monoadv;

namespace {

EdgeList random_graph(Rng& rng, std::uint32_t max_vertices, std::uint32_t max_edges) {
  EdgeList g;
  g.vertex_count = 2 + static_cast<std::uint32_t>(rng.uniform_below(max_vertices - 1));
  const auto e = rng.uniform_below(max_edges + 1);
  for (std::uint64_t i = 0; i < e; ++i) {
    const auto a = static_cast<std::uint32_t>(rng.uniform_below(g.vertex_count));
    auto b = static_cast<std::uint32_t>(rng.uniform_below(g.vertex_count - 1));
    if (b >= a) ++b;
    g.edges.push_back({a, b});
  }
  return g;
}

// Minimum over all 2^E orientations of the maximum out-degree.
std::uint32_t brute_tau(const EdgeList& g) {
  std::uint32_t best = ~0u;
  for (std::uint64_t mask = 0; mask < (1ull << g.edges.size()); ++mask) {
    std::vector<std::uint32_t> out(g.vertex_count, 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) ++out[g.edges[e][(mask >> e) & 1 ? 0 : 1]];
    std::uint32_t worst = 0;
    for (auto d : out) worst = std::max(worst, d);
    best = std::min(best, worst);
  }
  return g.edges.empty() ? 0 : best;
}

void check_valid(const EdgeList& g, const Orientation& o) {
  ASSERT_EQ(o.head.size(), g.edges.size());
  std::vector<std::uint32_t> out(g.vertex_count, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    ASSERT_TRUE(o.head[e] == g.edges[e][0] || o.head[e] == g.edges[e][1]);
    ++out[o.tail(g, e)];
  }
  EXPECT_EQ(out, o.out_degree);
  std::uint32_t worst = 0;
  for (auto d : out) worst = std::max(worst, d);
  EXPECT_EQ(o.max_outdegree, worst);
}

}  // namespace

TEST(Orientation, EdgelessGraph) {
  const EdgeList g{5, {}};
  const auto o = orient_min_max_outdegree(g);
  EXPECT_EQ(o.tau, 0u);
  EXPECT_EQ(o.max_outdegree, 0u);
}

TEST(Orientation, StarPointsOutward) {
  const EdgeList g{4, {{0, 1}, {0, 2}, {0, 3}}};
  const auto o = orient_min_max_outdegree(g);
  EXPECT_EQ(o.tau, 1u);
  check_valid(g, o);
  EXPECT_LE(o.out_degree[0], 1u);
}

TEST(Orientation, SolverMatchesExhaustiveSearch) {
  Rng rng(2);
  for (int trial = 0; trial < 400; ++trial) {
    const auto g = random_graph(rng, 8, 12);
    const auto expect = brute_tau(g);
    EXPECT_EQ(exhaustive_tau(g), expect);
    EXPECT_EQ(solve_tau(g), expect);
    const auto o = orient_min_max_outdegree(g);
    check_valid(g, o);
    EXPECT_EQ(o.max_outdegree, expect);
    EXPECT_EQ(o.tau, expect);
  }
}

TEST(Orientation, LargerGraphsStayValid) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(rng, 200, 800);
    const auto o = orient_min_max_outdegree(g);
    check_valid(g, o);
    std::uint32_t lower = 0;
    // Every subgraph induced by a component needs ceil(E_c / V_c).
    std::uint32_t count = 0;
    const auto comp = components(g, &count);
    std::vector<std::uint32_t> ve(g.vertex_count, 0), vv(g.vertex_count, 0);
    for (auto c : comp) ++vv[c];
    for (const auto& e : g.edges) ++ve[comp[e[0]]];
    for (std::uint32_t c = 0; c < g.vertex_count; ++c) {
      if (vv[c]) lower = std::max(lower, (ve[c] + vv[c] - 1) / vv[c]);
    }
    EXPECT_GE(o.max_outdegree, lower);
  }
}

TEST(Orientation, Deterministic) {
  Rng rng(3);
  const auto g = random_graph(rng, 30, 60);
  EXPECT_EQ(orient_min_max_outdegree(g).head, orient_min_max_outdegree(g).head);
}

TEST(Orientation, ComponentsLabelledBySmallestVertex) {
  const EdgeList g{6, {{4, 2}, {1, 5}}};
  std::uint32_t count = 0;
  const auto comp = components(g, &count);
  EXPECT_EQ(count, 4u);
  EXPECT_EQ(comp, (std::vector<std::uint32_t>{0, 1, 2, 3, 2, 1}));
}

TEST(UniformOrientation, SingleEdgeIsFair) {
  const EdgeList g{2, {{0, 1}}};
  Rng rng(10);
  int to_one = 0;
  for (int i = 0; i < 10000; ++i) to_one += sample_uniform_optimal_orientation(g, rng).head[0] == 1;
  EXPECT_NEAR(to_one / 10000.0, 0.5, 0.02);
  EXPECT_DOUBLE_EQ(head_probability(g, 0, 1, 1), 0.5);
}

TEST(UniformOrientation, FourCycleHasTwoOptima) {
  const EdgeList g{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  Rng rng(11);
  std::map<std::vector<std::uint32_t>, int> seen;
  for (int i = 0; i < 4000; ++i) {
    const auto o = sample_uniform_optimal_orientation(g, rng);
    EXPECT_EQ(o.max_outdegree, 1u);
    ++seen[o.head];
  }
  ASSERT_EQ(seen.size(), 2u);
  for (const auto& [head, count] : seen) EXPECT_NEAR(count / 4000.0, 0.5, 0.03);
  for (std::size_t e = 0; e < 4; ++e) EXPECT_DOUBLE_EQ(head_probability(g, e, g.edges[e][1], 1), 0.5);
}

TEST(UniformOrientation, PathMarginals) {
  // Path 0-1-2 with tau 1: three optimal orientations.
  const EdgeList g{3, {{0, 1}, {1, 2}}};
  EXPECT_DOUBLE_EQ(head_probability(g, 0, 1, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(head_probability(g, 1, 1, 1), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(head_probability(g, 0, 0, 1), 1.0 / 3.0);
}

TEST(UniformOrientation, CapIsEnforced) {
  EdgeList g{30, {}};
  for (std::uint32_t i = 0; i + 1 < 30; ++i) g.edges.push_back({i, i + 1});
  Rng rng(0);
  try {
    sample_uniform_optimal_orientation(g, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::capacity_exceeded);
  }
  EXPECT_THROW(exhaustive_tau(g), Error);
}
