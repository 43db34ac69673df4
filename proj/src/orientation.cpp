// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#include "monoadv/orientation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <optional>
#include <span>

#include "monoadv/error.hpp"

namespace monoadv {

namespace {

struct Adjacency {
  std::vector<std::uint32_t> offset;
  std::vector<std::uint32_t> edge;

  Adjacency(std::uint32_t vertices, std::span<const std::array<std::uint32_t, 2>> edges)
      : offset(vertices + 1, 0) {
    for (const auto& e : edges) {
      ++offset[e[0] + 1];
      ++offset[e[1] + 1];
    }
    std::partial_sum(offset.begin(), offset.end(), offset.begin());
    edge.resize(offset.back());
    std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
    for (std::uint32_t i = 0; i < edges.size(); ++i) {
      edge[fill[edges[i][0]]++] = i;
      edge[fill[edges[i][1]]++] = i;
    }
  }

  std::span<const std::uint32_t> of(std::uint32_t v) const {
    return {edge.data() + offset[v], edge.data() + offset[v + 1]};
  }
  std::uint32_t degree(std::uint32_t v) const { return offset[v + 1] - offset[v]; }
};

void check_edges(const EdgeList& g) {
  for (const auto& e : g.edges) {
    if (e[0] >= g.vertex_count || e[1] >= g.vertex_count || e[0] == e[1]) {
      fail(ErrorCode::invalid_parameters, "malformed edge list");
    }
  }
}

// Tail assignment with every load <= t, or nothing.
std::optional<std::vector<std::uint32_t>> feasible(const EdgeList& g,
                                                   const Adjacency& adj,
                                                   std::uint32_t t) {
  const auto& edges = g.edges;
  std::vector<std::uint32_t> tail(edges.size(), UINT32_MAX);
  std::vector<std::uint32_t> load(g.vertex_count, 0);
  std::vector<std::uint32_t> via(g.vertex_count);
  std::vector<char> seen(g.vertex_count);
  std::deque<std::uint32_t> queue;

  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    auto [a, b] = edges[e];
    if (a > b) std::swap(a, b);
    const std::uint32_t pick = load[b] < load[a] ? b : a;
    if (load[pick] < t) {
      tail[e] = pick;
      ++load[pick];
      continue;
    }
    // Both endpoints are full: find a vertex with spare capacity reachable by
    // reversing already assigned edges.
    std::fill(seen.begin(), seen.end(), 0);
    queue.clear();
    for (auto s : {a, b}) {
      seen[s] = 1;
      via[s] = UINT32_MAX;
      queue.push_back(s);
    }
    std::optional<std::uint32_t> free_vertex;
    while (!queue.empty() && !free_vertex) {
      const std::uint32_t w = queue.front();
      queue.pop_front();
      for (auto f : adj.of(w)) {
        if (tail[f] != w) continue;
        const std::uint32_t x = edges[f][0] == w ? edges[f][1] : edges[f][0];
        if (seen[x]) continue;
        seen[x] = 1;
        via[x] = f;
        if (load[x] < t) {
          free_vertex = x;
          break;
        }
        queue.push_back(x);
      }
    }
    if (!free_vertex) return std::nullopt;
    std::uint32_t x = *free_vertex;
    ++load[x];
    while (via[x] != UINT32_MAX) {
      const std::uint32_t f = via[x];
      const std::uint32_t w = tail[f];
      tail[f] = x;
      x = w;
    }
    // x is now a or b and has given one unit away.
    tail[e] = x;
  }
  return tail;
}

}  // namespace

std::vector<std::uint32_t> components(const EdgeList& g, std::uint32_t* count) {
  std::vector<std::uint32_t> parent(g.vertex_count);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& e : g.edges) {
    const auto a = find(e[0]), b = find(e[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> comp(g.vertex_count);
  std::vector<std::uint32_t> label(g.vertex_count, UINT32_MAX);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
    const auto root = find(v);
    if (label[root] == UINT32_MAX) label[root] = next++;
    comp[v] = label[root];
  }
  if (count) *count = next;
  return comp;
}

Orientation orient_min_max_outdegree(const EdgeList& g) {
  check_edges(g);
  Orientation out;
  out.head.assign(g.edges.size(), 0);
  out.out_degree.assign(g.vertex_count, 0);

  std::uint32_t ncomp = 0;
  const auto comp = components(g, &ncomp);
  std::vector<std::vector<std::uint32_t>> comp_edges(ncomp);
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
    comp_edges[comp[g.edges[e][0]]].push_back(e);
  }
  std::vector<std::vector<std::uint32_t>> comp_vertices(ncomp);
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) comp_vertices[comp[v]].push_back(v);

  for (std::uint32_t c = 0; c < ncomp; ++c) {
    const auto& ce = comp_edges[c];
    if (ce.empty()) continue;
    const auto& cv = comp_vertices[c];
    // Local relabeling keeps the vertex order, hence the tie-breaking.
    std::vector<std::uint32_t> local(g.vertex_count);
    for (std::uint32_t i = 0; i < cv.size(); ++i) local[cv[i]] = i;
    EdgeList sub{static_cast<std::uint32_t>(cv.size()), {}};
    sub.edges.reserve(ce.size());
    for (auto e : ce) sub.edges.push_back({local[g.edges[e][0]], local[g.edges[e][1]]});
    const Adjacency adj(sub.vertex_count, sub.edges);

    std::uint32_t hi = 0;
    for (std::uint32_t v = 0; v < sub.vertex_count; ++v) hi = std::max(hi, adj.degree(v));
    std::uint32_t lo = static_cast<std::uint32_t>(
        (sub.edges.size() + sub.vertex_count - 1) / sub.vertex_count);
    while (lo < hi) {
      const std::uint32_t mid = lo + (hi - lo) / 2;
      if (feasible(sub, adj, mid)) hi = mid; else lo = mid + 1;
    }
    const auto tails = *feasible(sub, adj, lo);
    for (std::uint32_t i = 0; i < ce.size(); ++i) {
      const auto e = ce[i];
      const std::uint32_t t = cv[tails[i]];
      out.head[e] = g.edges[e][0] == t ? g.edges[e][1] : g.edges[e][0];
      ++out.out_degree[t];
    }
    out.tau = std::max(out.tau, lo);
  }
  for (auto d : out.out_degree) out.max_outdegree = std::max(out.max_outdegree, d);
  return out;
}

std::uint32_t solve_tau(const EdgeList& g) { return orient_min_max_outdegree(g).tau; }

namespace {

template <typename Visit>
void for_each_orientation(const EdgeList& g, std::uint32_t cap, Visit visit) {
  check_edges(g);
  if (g.edges.size() > cap) {
    fail(ErrorCode::capacity_exceeded,
         std::to_string(g.edges.size()) + " edges exceed the enumeration cap of " +
             std::to_string(cap));
  }
  std::vector<std::uint32_t> deg(g.vertex_count);
  const std::uint64_t total = std::uint64_t{1} << g.edges.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // bit e set: edge e points at edges[e][1], so edges[e][0] is the tail.
    std::fill(deg.begin(), deg.end(), 0);
    std::uint32_t worst = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto t = (mask >> e) & 1 ? g.edges[e][0] : g.edges[e][1];
      worst = std::max(worst, ++deg[t]);
    }
    visit(mask, worst);
  }
}

}  // namespace

std::uint32_t exhaustive_tau(const EdgeList& g) {
  std::uint32_t best = UINT32_MAX;
  for_each_orientation(g, 24, [&](std::uint64_t, std::uint32_t worst) {
    best = std::min(best, worst);
  });
  return best;
}

Orientation sample_uniform_optimal_orientation(const EdgeList& g, Rng& rng,
                                               std::uint32_t cap) {
  std::uint32_t best = UINT32_MAX;
  std::vector<std::uint64_t> optimal;
  for_each_orientation(g, cap, [&](std::uint64_t mask, std::uint32_t worst) {
    if (worst < best) {
      best = worst;
      optimal.clear();
    }
    if (worst == best) optimal.push_back(mask);
  });
  const std::uint64_t mask = optimal[rng.uniform_below(optimal.size())];
  Orientation out;
  out.head.resize(g.edges.size());
  out.out_degree.assign(g.vertex_count, 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const bool fwd = (mask >> e) & 1;
    out.head[e] = fwd ? g.edges[e][1] : g.edges[e][0];
    ++out.out_degree[fwd ? g.edges[e][0] : g.edges[e][1]];
  }
  out.tau = out.max_outdegree = best;
  return out;
}

double head_probability(const EdgeList& g, std::size_t e, std::uint32_t head,
                        std::uint32_t bound, std::uint32_t cap) {
  if (e >= g.edges.size() || (g.edges[e][0] != head && g.edges[e][1] != head)) {
    fail(ErrorCode::invalid_parameters, "head is not an endpoint of the edge");
  }
  std::uint64_t total = 0, hits = 0;
  const bool want_fwd = g.edges[e][1] == head;
  for_each_orientation(g, cap, [&](std::uint64_t mask, std::uint32_t worst) {
    if (worst > bound) return;
    ++total;
    if (static_cast<bool>((mask >> e) & 1) == want_fwd) ++hits;
  });
  if (total == 0) {
    fail(ErrorCode::invalid_parameters, "no orientation meets the bound");
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace monoadv
