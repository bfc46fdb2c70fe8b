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

#ifndef HYPERCOLLAPSE_COLLAPSE_HPP_
#define HYPERCOLLAPSE_COLLAPSE_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <variant>
#include <vector>

#include "hypercollapse/hypergraph.hpp"
#include "hypercollapse/random.hpp"

namespace hypercollapse {

// One vertex removal. `n` counts removals so far including this one; Y and Z
// are the patch and debris totals after it.
struct CollapseStep {
  std::int64_t n = 0;
  VertexId removed_vertex = 0;
  std::int64_t patches_on_vertex = 0;  // 1 + W
  std::int64_t new_patches = 0;        // U: 2-edges through the vertex
  std::int64_t Y = 0;
  std::int64_t Z = 0;

  std::int64_t W() const { return patches_on_vertex - 1; }
};

struct CollapseTrace {
  std::size_t n_vertices = 0;
  std::int64_t initial_patches = 0;  // Y_0
  std::int64_t initial_debris = 0;   // Z_0
  std::vector<CollapseStep> steps;
  std::vector<VertexId> identifiable_vertices;  // sorted
  std::int64_t identifiable_edge_count = 0;     // edges inside V*
  std::int64_t terminal_debris = 0;
};

// Uniform choice over patches (not over patched vertices).
struct Randomized {
  Rng* rng;
};
// Always collapse the smallest patched vertex.
struct LowestVertexFirst {};
// Follow the listed vertices; each must carry a patch when its turn comes.
// After the list is exhausted the remaining patches are collapsed lowest first.
struct Explicit {
  std::vector<VertexId> order;
};
using CollapseOrder = std::variant<Randomized, LowestVertexFirst, Explicit>;

class CollapseOrderError : public std::logic_error {
 public:
  CollapseOrderError(std::size_t step, VertexId vertex);
  std::size_t step() const { return step_; }
  VertexId vertex() const { return vertex_; }

 private:
  std::size_t step_;
  VertexId vertex_;
};

struct CollapseOptions {
  // Recount the edges after every removal and throw std::logic_error if the
  // total changed or the patch/debris indices drift.
  bool check_invariants = false;
};

// Collapses `h` in place until it is stable and records the run.
CollapseTrace collapse(Hypergraph& h, const CollapseOrder& order,
                       const CollapseOptions& options = {});

// Least fixed point of "v is identifiable if some edge A containing v has
// every other vertex identifiable", computed directly on the edge list.
std::vector<VertexId> identifiable_oracle(const Hypergraph& h);

// Number of edges of h whose live vertex set lies inside `vertices` (sorted).
std::int64_t edges_within(const Hypergraph& h, const std::vector<VertexId>& vertices);

// CSV columns n,vertex,Y,Z,W,U; the first row is n = 0 with vertex empty.
void write_trace_csv(std::ostream& out, const CollapseTrace& trace);

}  // namespace hypercollapse

#endif  // HYPERCOLLAPSE_COLLAPSE_HPP_
