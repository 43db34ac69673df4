// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/oig.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <tuple>
#include <unordered_set>

#include "monoadv/error.hpp"

namespace monoadv {

namespace {

constexpr std::uint64_t kMemberBudget = 5'000'000;

// Distinct patterns of the class on `points` in order of first appearance,
// which is also increasing representative order.
struct SparseProjection {
  std::vector<BitPattern> patterns;
  std::vector<std::uint64_t> rep;
  std::vector<std::vector<std::uint32_t>> ones;
  std::vector<std::uint32_t> member_pattern;
  std::unordered_map<BitPattern, std::uint32_t, BitPatternHash> index;
};

SparseProjection sparse_projection(const HypothesisClass& cls,
                                   std::span<const PointId> points) {
  if (cls.size() > kMemberBudget) {
    fail(ErrorCode::capacity_exceeded,
         "class of size " + std::to_string(cls.size()) + " is too large for a one-inclusion graph");
  }
  std::unordered_map<PointId, std::vector<std::uint32_t>> positions;
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    if (!cls.domain().contains(points[i])) {
      fail(ErrorCode::domain_mismatch,
           "point " + std::to_string(points[i]) + " outside the class domain");
    }
    positions[points[i]].push_back(i);
  }
  const PointSet present(points);
  SparseProjection out;
  out.member_pattern.resize(cls.size());
  std::vector<PointId> positive;
  std::vector<std::uint32_t> ones;
  for (std::uint64_t m = 0; m < cls.size(); ++m) {
    positive.clear();
    cls.positive_points(cls.at(m), present, positive);
    BitPattern pattern(points.size());
    ones.clear();
    for (auto id : positive) {
      for (auto pos : positions[id]) {
        pattern.set(pos);
        ones.push_back(pos);
      }
    }
    auto [it, inserted] =
        out.index.emplace(pattern, static_cast<std::uint32_t>(out.patterns.size()));
    if (inserted) {
      std::sort(ones.begin(), ones.end());
      out.patterns.push_back(std::move(pattern));
      out.rep.push_back(m);
      out.ones.push_back(ones);
    }
    out.member_pattern[m] = it->second;
  }
  return out;
}

// Hamming-1 pairs (lower, upper, direction) in pattern index space.
std::vector<OigEdge> pattern_edges(const SparseProjection& proj) {
  std::vector<OigEdge> edges;
  for (std::uint32_t p = 0; p < proj.patterns.size(); ++p) {
    for (auto pos : proj.ones[p]) {
      BitPattern lower = proj.patterns[p];
      lower.flip(pos);
      auto it = proj.index.find(lower);
      if (it != proj.index.end()) edges.push_back({it->second, p, pos});
    }
  }
  return edges;
}

void sort_edges(EdgeList& g) {
  for (auto& e : g.edges) {
    if (e[0] > e[1]) std::swap(e[0], e[1]);
  }
  std::sort(g.edges.begin(), g.edges.end());
}

// Per-component optimal bound of a graph whose vertex order is the priority
// order.
std::vector<std::uint32_t> component_taus(const EdgeList& g,
                                          std::vector<std::uint32_t>& comp) {
  std::uint32_t count = 0;
  comp = components(g, &count);
  std::vector<EdgeList> parts(count);
  std::vector<std::uint32_t> local(g.vertex_count);
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) local[v] = parts[comp[v]].vertex_count++;
  for (const auto& e : g.edges) {
    parts[comp[e[0]]].edges.push_back({local[e[0]], local[e[1]]});
  }
  std::vector<std::uint32_t> tau(count, 0);
  for (std::uint32_t c = 0; c < count; ++c) {
    if (!parts[c].edges.empty()) tau[c] = solve_tau(parts[c]);
  }
  return tau;
}

}  // namespace

// ------------------------------------------------------------ the graph

std::optional<std::uint32_t> OneInclusionGraph::find(const BitPattern& pattern) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), pattern);
  if (it == vertices.end() || *it != pattern) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices.begin());
}

OneInclusionGraph build_oig(const HypothesisClass& cls,
                            std::span<const PointId> points) {
  const auto proj = sparse_projection(cls, points);
  const std::size_t nv = proj.patterns.size();
  std::vector<std::uint32_t> order(nv);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) {
    return proj.patterns[a] < proj.patterns[b];
  });
  std::vector<std::uint32_t> where(nv);
  OneInclusionGraph g;
  g.point_count = points.size();
  for (std::uint32_t i = 0; i < nv; ++i) {
    where[order[i]] = i;
    g.vertices.push_back(proj.patterns[order[i]]);
    g.representative.push_back(proj.rep[order[i]]);
  }
  for (auto e : pattern_edges(proj)) {
    g.edges.push_back({where[e.u], where[e.v], e.direction});
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  return g;
}

OneInclusionGraph build_oig(const HypothesisClass& cls,
                            std::span<const PointId> train, PointId test) {
  std::vector<PointId> points(train.begin(), train.end());
  points.push_back(test);
  return build_oig(cls, points);
}

namespace {

EdgeList solver_view(const OneInclusionGraph& g, std::vector<std::uint32_t>& rank,
                     std::vector<std::uint32_t>& edge_of) {
  const auto nv = static_cast<std::uint32_t>(g.vertices.size());
  std::vector<std::uint32_t> by_rep(nv);
  std::iota(by_rep.begin(), by_rep.end(), 0u);
  std::sort(by_rep.begin(), by_rep.end(), [&](auto a, auto b) {
    return g.representative[a] < g.representative[b];
  });
  rank.assign(nv, 0);
  for (std::uint32_t i = 0; i < nv; ++i) rank[by_rep[i]] = i;
  std::vector<std::array<std::uint32_t, 3>> keyed;
  keyed.reserve(g.edges.size());
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    const auto a = rank[g.edges[e].u], b = rank[g.edges[e].v];
    keyed.push_back({std::min(a, b), std::max(a, b), e});
  }
  std::sort(keyed.begin(), keyed.end());
  EdgeList view{nv, {}};
  edge_of.clear();
  for (const auto& k : keyed) {
    view.edges.push_back({k[0], k[1]});
    edge_of.push_back(k[2]);
  }
  return view;
}

}  // namespace

EdgeList solver_view(const OneInclusionGraph& g) {
  std::vector<std::uint32_t> rank, edge_of;
  return solver_view(g, rank, edge_of);
}

Orientation orient(const OneInclusionGraph& g) {
  std::vector<std::uint32_t> rank, edge_of;
  const EdgeList view = solver_view(g, rank, edge_of);
  const Orientation solved = orient_min_max_outdegree(view);
  std::vector<std::uint32_t> vertex_of(rank.size());
  for (std::uint32_t v = 0; v < rank.size(); ++v) vertex_of[rank[v]] = v;

  Orientation out;
  out.head.assign(g.edges.size(), 0);
  out.out_degree.assign(g.vertices.size(), 0);
  for (std::uint32_t k = 0; k < view.edges.size(); ++k) {
    out.head[edge_of[k]] = vertex_of[solved.head[k]];
  }
  for (std::uint32_t v = 0; v < rank.size(); ++v) {
    out.out_degree[v] = solved.out_degree[rank[v]];
  }
  out.max_outdegree = solved.max_outdegree;
  out.tau = solved.tau;
  return out;
}

void dump_graph(std::ostream& out, const OneInclusionGraph& g,
                const Orientation* orientation) {
  out << "graph points=" << g.point_count << " vertices=" << g.vertices.size()
      << " edges=" << g.edges.size() << '\n';
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    out << "vertex " << v << ' ' << g.vertices[v].to_string() << " rep="
        << g.representative[v] << '\n';
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    out << "edge " << g.edges[e].u << ' ' << g.edges[e].v << " dir="
        << g.edges[e].direction;
    if (orientation) out << " head=" << orientation->head[e];
    out << '\n';
  }
  if (orientation) out << "tau " << orientation->tau << '\n';
}

std::uint64_t loo_error_sum(const OneInclusionGraph& g, const Orientation& o,
                            const BitPattern& labels) {
  auto scan = [&](const BitPattern& p) -> std::optional<std::uint32_t> {
    for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
      if (g.vertices[v] == p) return v;
    }
    return std::nullopt;
  };
  std::uint64_t mistakes = 0;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    BitPattern zero = labels, one = labels;
    zero.set(j, false);
    one.set(j, true);
    const auto z = scan(zero), w = scan(one);
    Label prediction;
    if (z && w) {
      std::optional<std::uint32_t> head;
      for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if ((g.edges[e].u == *z && g.edges[e].v == *w) ||
            (g.edges[e].u == *w && g.edges[e].v == *z)) {
          head = o.head[e];
        }
      }
      if (!head) fail(ErrorCode::protocol_violation, "missing edge between 0 and 1 vertex");
      prediction = *head == *z ? 0 : 1;
    } else if (z) {
      prediction = 0;
    } else if (w) {
      prediction = 1;
    } else {
      fail(ErrorCode::realizability_violation, "labels are not a vertex of the graph");
    }
    mistakes += prediction != labels.test(j);
  }
  return mistakes;
}

LooAudit loo_audit(const HypothesisClass& cls, std::span<const PointId> points) {
  const auto g = build_oig(cls, points);
  const auto o = orient(g);
  BitPattern labels(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    labels.set(i, cls.target_label(points[i]));
  }
  const auto target = g.find(labels);
  if (!target) fail(ErrorCode::realizability_violation, "h* pattern missing");
  return {loo_error_sum(g, o, labels), o.out_degree[*target], o.tau};
}

// ------------------------------------------------------------- predictor

struct OigPredictor::TestColumn {
  std::vector<std::uint64_t> positives;  // sorted class indices
  // pattern -> (positive members, smallest positive member)
  std::unordered_map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> touched;
};

struct OigPredictor::Local {
  std::vector<std::uint64_t> keys;  // pattern * 2 + bit, by representative
  EdgeList graph;
};

OigPredictor::OigPredictor(const HypothesisClass& cls,
                           std::span<const LabeledExample> train)
    : cls_(cls), train_(train.begin(), train.end()) {
  std::vector<PointId> points;
  points.reserve(train.size());
  BitPattern labels(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    points.push_back(train[i].point);
    labels.set(i, train[i].label);
    seen_.emplace(train[i].point, train[i].label);
  }
  auto proj = sparse_projection(cls, points);
  const auto target = proj.index.find(labels);
  if (target == proj.index.end()) {
    fail(ErrorCode::realizability_violation,
         "training labels are not realized by " + cls.spec().to_string());
  }
  target_pattern_ = target->second;
  member_pattern_ = std::move(proj.member_pattern);
  const auto np = static_cast<std::uint32_t>(proj.patterns.size());
  pattern_members_.resize(np);
  for (std::uint64_t m = 0; m < member_pattern_.size(); ++m) {
    pattern_members_[member_pattern_[m]].push_back(m);
  }
  pattern_adj_.resize(np);
  EdgeList train_graph{np, {}};
  for (const auto& e : pattern_edges(proj)) {
    pattern_adj_[e.u].push_back(e.v);
    pattern_adj_[e.v].push_back(e.u);
    train_graph.edges.push_back({e.u, e.v});
  }
  for (auto& adj : pattern_adj_) std::sort(adj.begin(), adj.end());
  sort_edges(train_graph);
  train_comp_tau_ = component_taus(train_graph, train_comp_);
  comps_by_tau_.resize(train_comp_tau_.size());
  std::iota(comps_by_tau_.begin(), comps_by_tau_.end(), 0u);
  std::stable_sort(comps_by_tau_.begin(), comps_by_tau_.end(), [&](auto a, auto b) {
    return train_comp_tau_[a] > train_comp_tau_[b];
  });
}

OigPredictor::TestColumn OigPredictor::column(PointId test) const {
  TestColumn col;
  col.positives = cls_.positive_members(test);
  for (auto m : col.positives) {
    auto [it, inserted] = col.touched.try_emplace(member_pattern_[m], 0, m);
    ++it->second.first;
  }
  return col;
}

namespace {

struct ColumnView {
  const std::vector<std::vector<std::uint64_t>>& members;
  const std::unordered_map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>>& touched;
  const std::vector<std::uint64_t>& positives;

  bool exists(std::uint32_t p, unsigned b) const {
    auto it = touched.find(p);
    const std::uint64_t ones = it == touched.end() ? 0 : it->second.first;
    return b ? ones > 0 : ones < members[p].size();
  }
  std::uint64_t rep(std::uint32_t p, unsigned b) const {
    if (b) return touched.at(p).second;
    for (auto m : members[p]) {
      if (!std::binary_search(positives.begin(), positives.end(), m)) return m;
    }
    return UINT64_MAX;
  }
};

}  // namespace

OigPredictor::Local OigPredictor::component(const TestColumn& col,
                                            std::uint64_t start_key) const {
  const ColumnView view{pattern_members_, col.touched, col.positives};
  std::vector<std::uint64_t> keys{start_key};
  std::unordered_set<std::uint64_t> visited{start_key};
  for (std::size_t head = 0; head < keys.size(); ++head) {
    const auto p = static_cast<std::uint32_t>(keys[head] >> 1);
    const unsigned b = keys[head] & 1;
    auto visit = [&](std::uint64_t k) {
      if (visited.insert(k).second) keys.push_back(k);
    };
    for (auto q : pattern_adj_[p]) {
      if (view.exists(q, b)) visit(std::uint64_t{q} << 1 | b);
    }
    if (view.exists(p, 1 - b)) visit(std::uint64_t{p} << 1 | (1 - b));
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> by_rep;
  by_rep.reserve(keys.size());
  for (auto k : keys) {
    by_rep.emplace_back(view.rep(static_cast<std::uint32_t>(k >> 1), k & 1), k);
  }
  std::sort(by_rep.begin(), by_rep.end());
  Local local;
  std::unordered_map<std::uint64_t, std::uint32_t> rank;
  for (std::uint32_t i = 0; i < by_rep.size(); ++i) {
    local.keys.push_back(by_rep[i].second);
    rank.emplace(by_rep[i].second, i);
  }
  local.graph.vertex_count = static_cast<std::uint32_t>(keys.size());
  for (auto k : local.keys) {
    const auto p = static_cast<std::uint32_t>(k >> 1);
    const unsigned b = k & 1;
    for (auto q : pattern_adj_[p]) {
      if (q > p && view.exists(q, b)) {
        local.graph.edges.push_back({rank.at(k), rank.at(std::uint64_t{q} << 1 | b)});
      }
    }
    if (b == 0 && view.exists(p, 1)) local.graph.edges.push_back({rank.at(k), rank.at(k | 1)});
  }
  sort_edges(local.graph);
  return local;
}

std::uint32_t OigPredictor::global_tau(const TestColumn& col) const {
  std::unordered_set<std::uint32_t> touched_comps;
  for (const auto& [p, _] : col.touched) touched_comps.insert(train_comp_[p]);
  std::uint32_t tau = 0;
  for (auto c : comps_by_tau_) {
    if (!touched_comps.count(c)) {
      tau = train_comp_tau_[c];
      break;
    }
  }
  const ColumnView view{pattern_members_, col.touched, col.positives};
  std::unordered_set<std::uint64_t> done;
  for (std::uint32_t p = 0; p < train_comp_.size(); ++p) {
    if (!touched_comps.count(train_comp_[p])) continue;
    for (unsigned b = 0; b < 2; ++b) {
      const std::uint64_t key = std::uint64_t{p} << 1 | b;
      if (!view.exists(p, b) || done.count(key)) continue;
      const Local local = component(col, key);
      done.insert(local.keys.begin(), local.keys.end());
      if (!local.graph.edges.empty()) tau = std::max(tau, solve_tau(local.graph));
    }
  }
  return tau;
}

std::optional<Label> OigPredictor::forced(PointId test, const TestColumn* col) const {
  if (auto it = seen_.find(test); it != seen_.end()) return it->second;
  if (!col) return std::nullopt;
  const ColumnView view{pattern_members_, col->touched, col->positives};
  const bool has0 = view.exists(target_pattern_, 0);
  const bool has1 = view.exists(target_pattern_, 1);
  if (has0 && !has1) return 0;
  if (has1 && !has0) return 1;
  return std::nullopt;
}

namespace {

std::size_t test_edge(const EdgeList& g, std::uint32_t a, std::uint32_t b) {
  const std::array<std::uint32_t, 2> want{std::min(a, b), std::max(a, b)};
  auto it = std::lower_bound(g.edges.begin(), g.edges.end(), want);
  return static_cast<std::size_t>(it - g.edges.begin());
}

std::uint32_t index_of_key(const std::vector<std::uint64_t>& keys, std::uint64_t key) {
  return static_cast<std::uint32_t>(std::find(keys.begin(), keys.end(), key) - keys.begin());
}

}  // namespace

Label OigPredictor::predict(PointId test) const {
  if (auto f = forced(test, nullptr)) return *f;
  const TestColumn col = column(test);
  if (auto f = forced(test, &col)) return *f;
  const std::uint64_t k0 = std::uint64_t{target_pattern_} << 1;
  const Local local = component(col, k0);
  const auto v0 = index_of_key(local.keys, k0);
  const auto v1 = index_of_key(local.keys, k0 | 1);
  const Orientation o = orient_min_max_outdegree(local.graph);
  return o.head[test_edge(local.graph, v0, v1)] == v0 ? 0 : 1;
}

double OigPredictor::probability_of_one(PointId test, std::uint32_t cap) const {
  if (auto f = forced(test, nullptr)) return *f;
  const TestColumn col = column(test);
  if (auto f = forced(test, &col)) return *f;
  const std::uint64_t k0 = std::uint64_t{target_pattern_} << 1;
  const Local local = component(col, k0);
  const auto v0 = index_of_key(local.keys, k0);
  const auto v1 = index_of_key(local.keys, k0 | 1);
  if (local.graph.edges.size() > cap) {
    fail(ErrorCode::capacity_exceeded,
         "test edge component has " + std::to_string(local.graph.edges.size()) +
             " edges, above the enumeration cap of " + std::to_string(cap));
  }
  return head_probability(local.graph, test_edge(local.graph, v0, v1), v1,
                          global_tau(col), cap);
}

Label OigPredictor::predict(PointId test, OigStrategy strategy, Rng& rng) const {
  if (strategy == OigStrategy::any_optimal) return predict(test);
  return rng.uniform01() < probability_of_one(test) ? 1 : 0;
}

Label oig_predict(const HypothesisClass& cls,
                  std::span<const LabeledExample> train, PointId test,
                  OigStrategy strategy, Rng& rng) {
  return OigPredictor(cls, train).predict(test, strategy, rng);
}

}  // namespace monoadv
