// Copyright 2026 The monoadv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "monoadv/rng.hpp"

namespace monoadv {

/// Undirected multigraph-free edge list. Vertex indices double as the
/// solver's tie-breaking priority: lower index wins ties.
struct EdgeList {
  std::uint32_t vertex_count = 0;
  std::vector<std::array<std::uint32_t, 2>> edges;
};

/// head[e] is the endpoint edge e points to; the other endpoint pays one
/// unit of out-degree.
struct Orientation {
  std::vector<std::uint32_t> head;
  std::vector<std::uint32_t> out_degree;
  std::uint32_t max_outdegree = 0;
  std::uint32_t tau = 0;

  std::uint32_t tail(const EdgeList& g, std::size_t e) const {
    return g.edges[e][0] == head[e] ? g.edges[e][1] : g.edges[e][0];
  }
};

/// Connected components; comp[v] numbers components by their smallest vertex.
std::vector<std::uint32_t> components(const EdgeList& g,
                                      std::uint32_t* count = nullptr);

/// Min-max out-degree orientation. Each component is solved separately by
/// binary search over its own bound with a greedy-plus-augmenting-path
/// feasibility test, so the result is optimal globally and deterministic in
/// the vertex and edge order.
Orientation orient_min_max_outdegree(const EdgeList& g);

/// Smallest bound t for which every vertex can keep out-degree <= t.
std::uint32_t solve_tau(const EdgeList& g);

/// Exhaustive minimum over all 2^|E| orientations. Caps at 24 edges.
std::uint32_t exhaustive_tau(const EdgeList& g);

/// Uniform draw among all orientations achieving tau, by enumeration.
/// Throws capacity_exceeded above `cap` edges.
Orientation sample_uniform_optimal_orientation(const EdgeList& g, Rng& rng,
                                               std::uint32_t cap = 20);

/// Fraction of orientations with every out-degree <= bound in which edge
/// `e` points at `head`. Throws capacity_exceeded above `cap` edges.
double head_probability(const EdgeList& g, std::size_t e, std::uint32_t head,
                        std::uint32_t bound, std::uint32_t cap = 20);

}  // namespace monoadv
