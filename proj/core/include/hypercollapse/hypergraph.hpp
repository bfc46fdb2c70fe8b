// Copyright 2026 The hypercollapse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HYPERCOLLAPSE_HYPERGRAPH_HPP_
#define HYPERCOLLAPSE_HYPERGRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hypercollapse/beta.hpp"
#include "hypercollapse/random.hpp"

namespace hypercollapse {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct RemovalSummary {
  std::int64_t patches_removed = 0;  // patches on the removed vertex
  std::int64_t new_patches = 0;      // 2-edges through it, now patches
  std::int64_t new_debris = 0;       // equals patches_removed
};

// A finite multi-hypergraph on vertices 0..N-1. Each stored edge is one unit
// of multiplicity; several edges may sit on the same vertex subset. Edges
// shrink in place as vertices are removed, so the edge count never changes.
// Removed vertices are parked after an edge's live prefix, which keeps the
// original vertex set readable.
//
// Indices maintained alongside the edge list:
//  * incidence: edge ids containing each vertex (fixed at insertion),
//  * patch tokens: ids of all edges of current size 1, with O(1) removal,
//  * debris count: edges of current size 0.
class Hypergraph {
 public:
  explicit Hypergraph(std::size_t n_vertices = 0);

  std::size_t n_vertices() const { return n_vertices_; }
  std::size_t edge_count() const { return offsets_.size(); }
  std::size_t patch_count() const { return patches_.size(); }
  std::int64_t debris_count() const { return debris_; }

  // Adds one edge on `vertices` (any order, duplicates rejected). Throws
  // std::invalid_argument for out-of-range or repeated vertices.
  EdgeId add_edge(std::span<const VertexId> vertices);
  EdgeId add_edge(std::initializer_list<VertexId> vertices) {
    return add_edge(std::span<const VertexId>(vertices.begin(), vertices.size()));
  }

  // Current (live) vertices of an edge, strictly increasing.
  std::span<const VertexId> edge(EdgeId e) const {
    return {data_.data() + offsets_[e], sizes_[e]};
  }
  std::size_t edge_size(EdgeId e) const { return sizes_[e]; }
  // Vertex set of the edge at insertion time (live prefix first).
  std::span<const VertexId> original_edge(EdgeId e) const {
    return {data_.data() + offsets_[e], original_sizes_[e]};
  }

  std::span<const EdgeId> incident_edges(VertexId v) const { return incidence_[v]; }
  std::span<const EdgeId> patch_tokens() const { return patches_; }

  // Patches currently sitting on v.
  std::int64_t patches_on(VertexId v) const;
  bool removed(VertexId v) const { return removed_[v] != 0; }

  // Collapse at v: v leaves every edge containing it. Requires at least one
  // patch on v; throws std::logic_error otherwise.
  RemovalSummary remove_vertex(VertexId v);

  // Edges with live size 1 (resp. 0) recounted from scratch, and incidence
  // rebuilt from the live vertex lists; true when they agree with the stored
  // indices.
  bool indices_consistent() const;

  // The same hypergraph with each distinct live vertex set kept once.
  Hypergraph deduplicated() const;

  // Text form: header "N=<int>", then one edge per line as space-separated
  // vertex ids; an empty line is a debris edge.
  void write(std::ostream& out) const;
  static Hypergraph read(std::istream& in);

 private:
  void add_patch(EdgeId e);
  void drop_patch(EdgeId e);

  std::size_t n_vertices_;
  std::vector<VertexId> data_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> sizes_;
  std::vector<std::uint32_t> original_sizes_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::vector<std::uint8_t> removed_;
  std::vector<EdgeId> patches_;
  std::vector<std::uint32_t> patch_slot_;  // position in patches_, or kNoSlot
  std::int64_t debris_ = 0;
};

// Uniformly random j-subset of {0..n-1}, sorted. Partial Fisher-Yates over a
// caller-supplied scratch buffer holding a permutation of 0..n-1; the buffer
// stays a permutation afterwards, so it can be reused across calls.
std::vector<VertexId> uniform_subset(std::size_t n, std::size_t j, Rng& rng,
                                     std::vector<VertexId>& scratch);
std::vector<VertexId> uniform_subset(std::size_t n, std::size_t j, Rng& rng);

// Poisson(beta) hypergraph: M_j ~ Poisson(N beta_j) edges of size j, each on
// an independent uniform j-subset. Throws std::invalid_argument when the
// series has support beyond N.
Hypergraph sample_poisson(const BetaSeries& series, std::size_t n_vertices, Rng& rng);

}  // namespace hypercollapse

#endif  // HYPERCOLLAPSE_HYPERGRAPH_HPP_
