// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "monoadv/error.hpp"
#include "monoadv/oig.hpp"
#include "monoadv/orientation.hpp"
#include "oracles.hpp"

using namespace monoadv;

namespace {

struct Instance {
  std::vector<oracle::Row> rows;
  HypothesisClass cls;
  Dataset train;
  PointId test = 0;
};

Instance random_instance(Rng& rng, std::uint64_t width_max, std::size_t rows_max) {
  const auto width = 2 + rng.uniform_below(width_max - 1);
  std::vector<BitPattern> table;
  std::vector<oracle::Row> rows;
  std::set<std::string> seen;
  const auto count = 1 + rng.uniform_below(rows_max);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::string s;
    for (std::uint64_t j = 0; j < width; ++j) s += rng.uniform_below(3) == 0 ? '1' : '0';
    if (!seen.insert(s).second) continue;
    table.push_back(BitPattern::from_string(s));
    oracle::Row row;
    for (char ch : s) row.push_back(ch == '1');
    rows.push_back(row);
  }
  const auto truth = rng.uniform_below(rows.size());
  Instance inst{rows, HypothesisClass::from_table(table, truth), {}, 0};
  std::rotate(inst.rows.begin(), inst.rows.begin() + static_cast<std::ptrdiff_t>(truth),
              inst.rows.begin() + static_cast<std::ptrdiff_t>(truth) + 1);
  const auto len = rng.uniform_below(width + 1);
  for (std::uint64_t i = 0; i < len; ++i) {
    const PointId p = rng.uniform_below(width);
    inst.train.push_back({p, inst.rows[0][p]});
  }
  inst.test = rng.uniform_below(width);
  return inst;
}

// One-inclusion graph on `points` built from the rows.
struct BruteGraph {
  std::vector<std::string> vertices;  // sorted
  std::vector<std::array<std::uint32_t, 2>> edges;
  std::vector<std::size_t> direction;
};

BruteGraph brute_graph(const std::vector<oracle::Row>& rows, const std::vector<PointId>& points) {
  BruteGraph g;
  std::set<std::string> pats;
  for (const auto& row : rows) {
    std::string s;
    for (auto p : points) s += row[p] ? '1' : '0';
    pats.insert(s);
  }
  g.vertices.assign(pats.begin(), pats.end());
  for (std::uint32_t a = 0; a < g.vertices.size(); ++a) {
    for (std::uint32_t b = a + 1; b < g.vertices.size(); ++b) {
      std::size_t diff = 0, where = 0;
      for (std::size_t k = 0; k < points.size(); ++k) {
        if (g.vertices[a][k] != g.vertices[b][k]) {
          ++diff;
          where = k;
        }
      }
      if (diff == 1) {
        g.edges.push_back({a, b});
        g.direction.push_back(where);
      }
    }
  }
  return g;
}

std::uint32_t index_of(const BruteGraph& g, const std::string& s) {
  return static_cast<std::uint32_t>(std::lower_bound(g.vertices.begin(), g.vertices.end(), s) -
                                    g.vertices.begin());
}

// Fraction of optimal orientations of the whole graph pointing `edge` at `to`.
double brute_probability(const BruteGraph& g, std::size_t edge, std::uint32_t to) {
  std::uint32_t best = ~0u;
  std::uint64_t hits = 0, total = 0;
  for (std::uint64_t mask = 0; mask < (1ull << g.edges.size()); ++mask) {
    std::vector<std::uint32_t> out(g.vertices.size(), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) ++out[g.edges[e][(mask >> e) & 1 ? 0 : 1]];
    const auto worst = g.edges.empty() ? 0 : *std::max_element(out.begin(), out.end());
    if (worst < best) {
      best = worst;
      hits = total = 0;
    }
    if (worst == best) {
      ++total;
      hits += g.edges[edge][(mask >> edge) & 1] == to;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<PointId> points_of(const Dataset& data) {
  std::vector<PointId> out;
  for (const auto& ex : data) out.push_back(ex.point);
  return out;
}

std::string labels_of(const Dataset& data) {
  std::string s;
  for (const auto& ex : data) s += ex.label ? '1' : '0';
  return s;
}

}  // namespace

TEST(Oig, TwoPairExample) {
  const auto cls = HypothesisClass::oig_lb(2);
  const std::vector<PointId> train{cls.domain().x(0)};
  const auto g = build_oig(cls, train, cls.domain().x(1));
  ASSERT_EQ(g.vertices.size(), 3u);
  ASSERT_EQ(g.edges.size(), 2u);
  const auto v00 = g.find(BitPattern::from_string("00"));
  const auto v10 = g.find(BitPattern::from_string("10"));
  const auto v01 = g.find(BitPattern::from_string("01"));
  ASSERT_TRUE(v00 && v10 && v01);
  EXPECT_FALSE(g.find(BitPattern::from_string("11")));
  std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> edges;
  for (const auto& e : g.edges) edges.insert({e.u, e.v, e.direction});
  EXPECT_TRUE(edges.count({*v00, *v10, 0}));
  EXPECT_TRUE(edges.count({*v00, *v01, 1}));
  EXPECT_EQ(orient(g).tau, 1u);
}

TEST(Oig, TargetOnlyClassHasNoEdges) {
  const auto cls = HypothesisClass::from_table({BitPattern::from_string("000")});
  const std::vector<PointId> pts{0, 1, 2};
  const auto g = build_oig(cls, pts);
  EXPECT_EQ(g.vertices.size(), 1u);
  EXPECT_TRUE(g.edges.empty());
  const auto o = orient(g);
  EXPECT_EQ(loo_error_sum(g, o, BitPattern::from_string("000")), 0u);
  const Dataset train{{0, 0}};
  EXPECT_EQ(OigPredictor(cls, train).predict(2), 0);
  EXPECT_DOUBLE_EQ(OigPredictor(cls, train).probability_of_one(2), 0.0);
}

TEST(Oig, GraphMatchesBruteForce) {
  Rng rng(40);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 7, 20);
    auto pts = points_of(inst.train);
    pts.push_back(inst.test);
    const auto g = build_oig(inst.cls, pts);
    const auto b = brute_graph(inst.rows, pts);
    ASSERT_EQ(g.vertices.size(), b.vertices.size());
    for (std::size_t i = 0; i < b.vertices.size(); ++i) EXPECT_EQ(g.vertices[i].to_string(), b.vertices[i]);
    ASSERT_EQ(g.edges.size(), b.edges.size());
    std::set<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> got, want;
    for (const auto& e : g.edges) got.insert({std::min(e.u, e.v), std::max(e.u, e.v), e.direction});
    for (std::size_t e = 0; e < b.edges.size(); ++e) want.insert({b.edges[e][0], b.edges[e][1], b.direction[e]});
    EXPECT_EQ(got, want);
    for (const auto& e : g.edges) {
      EXPECT_FALSE(g.vertices[e.u].test(e.direction));
      EXPECT_TRUE(g.vertices[e.v].test(e.direction));
    }
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      // The representative is the first class member realizing the pattern.
      const auto rep = g.representative[i];
      for (std::uint64_t j = 0; j <= rep; ++j) {
        std::string s;
        for (auto p : pts) s += inst.rows[j][p] ? '1' : '0';
        EXPECT_EQ(s == b.vertices[i], j == rep);
      }
    }
  }
}

TEST(Oig, OrientationIsOptimalAndLooIdentityHolds) {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 7, 20);
    auto pts = points_of(inst.train);
    pts.push_back(inst.test);
    const auto g = build_oig(inst.cls, pts);
    const auto o = orient(g);
    const auto b = brute_graph(inst.rows, pts);
    if (b.edges.size() <= 16) {
      EXPECT_EQ(o.max_outdegree, o.tau);
      EXPECT_EQ(o.tau, exhaustive_tau(solver_view(g)));
    }
    std::string truth;
    for (auto p : pts) truth += inst.rows[0][p] ? '1' : '0';
    const auto v = g.find(BitPattern::from_string(truth));
    ASSERT_TRUE(v);
    // Leave-one-out mistakes counted position by position.
    std::uint64_t mistakes = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].direction == i && (g.edges[e].u == *v || g.edges[e].v == *v)) {
          mistakes += o.head[e] != *v;
        }
      }
    }
    const auto labels = BitPattern::from_string(truth);
    EXPECT_EQ(loo_error_sum(g, o, labels), mistakes);
    EXPECT_EQ(o.out_degree[*v], mistakes);
    const auto audit = loo_audit(inst.cls, pts);
    EXPECT_EQ(audit.mistakes, audit.target_outdegree);
    EXPECT_EQ(audit.tau, o.tau);
  }
}

TEST(Oig, TauAtMostVcDimension) {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = random_instance(rng, 7, 24);
    auto pts = points_of(inst.train);
    pts.push_back(inst.test);
    const auto vc = oracle::vc(inst.rows, 7);
    EXPECT_LE(orient(build_oig(inst.cls, pts)).tau, vc);
  }
}

TEST(OigPredictor, DeterministicMatchesFullGraph) {
  Rng rng(43);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = random_instance(rng, 8, 30);
    const OigPredictor pred(inst.cls, inst.train);
    const auto label = pred.predict(inst.test);
    const auto seen = std::find_if(inst.train.begin(), inst.train.end(),
                                   [&](const auto& ex) { return ex.point == inst.test; });
    if (seen != inst.train.end()) {
      EXPECT_EQ(label, seen->label);
      continue;
    }
    const auto g = build_oig(inst.cls, points_of(inst.train), inst.test);
    const auto o = orient(g);
    const auto s = labels_of(inst.train);
    const auto v0 = g.find(BitPattern::from_string(s + "0"));
    const auto v1 = g.find(BitPattern::from_string(s + "1"));
    ASSERT_TRUE(v0 || v1);
    if (!v0 || !v1) {
      EXPECT_EQ(label, v1 ? 1 : 0);
      continue;
    }
    std::optional<std::uint32_t> head;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (g.edges[e].u == *v0 && g.edges[e].v == *v1) head = o.head[e];
    }
    ASSERT_TRUE(head);
    EXPECT_EQ(label, *head == *v1 ? 1 : 0) << "trial " << trial;
  }
}

TEST(OigPredictor, ProbabilityMatchesEnumeration) {
  Rng rng(44);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 150; ++trial) {
    const auto inst = random_instance(rng, 6, 14);
    auto pts = points_of(inst.train);
    pts.push_back(inst.test);
    const auto b = brute_graph(inst.rows, pts);
    if (b.edges.size() > 14) continue;
    const auto s = labels_of(inst.train);
    const auto v0 = index_of(b, s + "0");
    const auto v1 = index_of(b, s + "1");
    const bool has0 = v0 < b.vertices.size() && b.vertices[v0] == s + "0";
    const bool has1 = v1 < b.vertices.size() && b.vertices[v1] == s + "1";
    double expect = has1 ? 1.0 : 0.0;
    if (has0 && has1) {
      std::size_t edge = 0;
      while (!(b.edges[edge][0] == v0 && b.edges[edge][1] == v1)) ++edge;
      expect = brute_probability(b, edge, v1);
    }
    const OigPredictor pred(inst.cls, inst.train);
    EXPECT_NEAR(pred.probability_of_one(inst.test), expect, 1e-12) << "trial " << trial;
    ++checked;
  }
  EXPECT_GE(checked, 100);
}

TEST(OigPredictor, PairClassSingleExample) {
  // One clean example x_i with its pair y_i: an unseen x gets probability 1/2.
  const auto cls = HypothesisClass::oig_lb(2);
  const auto& dom = cls.domain();
  const Dataset train{{dom.x(0), 0}, {dom.y(0), 0}};
  const OigPredictor pred(cls, train);
  EXPECT_EQ(pred.predict(dom.x(0)), 0);
  EXPECT_DOUBLE_EQ(pred.probability_of_one(dom.x(0)), 0.0);
  EXPECT_DOUBLE_EQ(pred.probability_of_one(dom.x(1)), 0.5);
  EXPECT_DOUBLE_EQ(pred.probability_of_one(dom.y(1)), 0.5);
}

TEST(OigPredictor, UnrealizableTrainingDataIsRejected) {
  const auto cls = HypothesisClass::oig_lb(3);
  const Dataset train{{cls.domain().x(0), 1}, {cls.domain().x(1), 1}};
  try {
    OigPredictor pred(cls, train);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::realizability_violation);
  }
}

TEST(OigPredictor, RandomStrategyFrequency) {
  // Path 10 - 00 - 01: one of its three optimal orientations predicts 1.
  const auto cls = HypothesisClass::oig_lb(2);
  const Dataset train{{cls.domain().x(0), 0}};
  Rng rng(9);
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += oig_predict(cls, train, cls.domain().x(1), OigStrategy::random_optimal, rng);
  EXPECT_NEAR(ones / 10000.0, 1.0 / 3.0, 0.02);
}

TEST(Oig, DumpFormat) {
  const auto cls = HypothesisClass::oig_lb(2);
  const std::vector<PointId> pts{cls.domain().x(0), cls.domain().x(1)};
  const auto g = build_oig(cls, pts);
  const auto o = orient(g);
  std::ostringstream out;
  dump_graph(out, g, &o);
  const auto text = out.str();
  EXPECT_EQ(text.rfind("graph points=2 vertices=3 edges=2\n", 0), 0u) << text;
  EXPECT_NE(text.find("tau 1"), std::string::npos) << text;
}
