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

#include "hypercollapse/collapse.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <queue>
#include <string>

namespace hypercollapse {

CollapseOrderError::CollapseOrderError(std::size_t step, VertexId vertex)
    : std::logic_error("collapse step " + std::to_string(step) + ": vertex " +
                       std::to_string(vertex) + " carries no patch"),
      step_(step),
      vertex_(vertex) {}

namespace {

class LowestPatched {
 public:
  explicit LowestPatched(const Hypergraph& h) {
    for (EdgeId e : h.patch_tokens()) heap_.push(h.edge(e)[0]);
  }

  VertexId next(const Hypergraph& h) {
    while (h.removed(heap_.top()) || h.patches_on(heap_.top()) == 0) heap_.pop();
    return heap_.top();
  }

  void after_removal(const Hypergraph& h, VertexId v) {
    for (EdgeId e : h.incident_edges(v)) {
      if (h.edge_size(e) == 1) heap_.push(h.edge(e)[0]);
    }
  }

 private:
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> heap_;
};

struct SizeCensus {
  std::int64_t total = 0;
  std::int64_t patches = 0;
  std::int64_t debris = 0;
};

SizeCensus census(const Hypergraph& h) {
  SizeCensus c;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    ++c.total;
    c.patches += h.edge_size(e) == 1;
    c.debris += h.edge_size(e) == 0;
  }
  return c;
}

void check_step(const Hypergraph& h, const SizeCensus& before, const CollapseStep& step,
                std::int64_t initial_edges) {
  const SizeCensus after = census(h);
  if (after.total != initial_edges) {
    throw std::logic_error("edge count changed during collapse step " + std::to_string(step.n));
  }
  if (after.debris - before.debris != step.patches_on_vertex ||
      after.patches - before.patches != step.new_patches - step.patches_on_vertex ||
      after.patches != step.Y || after.debris != step.Z) {
    throw std::logic_error("patch/debris bookkeeping broke at step " + std::to_string(step.n));
  }
  if (!h.indices_consistent()) {
    throw std::logic_error("hypergraph indices inconsistent after step " + std::to_string(step.n));
  }
}

}  // namespace

CollapseTrace collapse(Hypergraph& h, const CollapseOrder& order, const CollapseOptions& options) {
  CollapseTrace trace;
  trace.n_vertices = h.n_vertices();
  trace.initial_patches = static_cast<std::int64_t>(h.patch_count());
  trace.initial_debris = h.debris_count();
  const auto initial_edges = static_cast<std::int64_t>(h.edge_count());

  std::optional<LowestPatched> lowest;
  auto lowest_next = [&]() {
    if (!lowest) lowest.emplace(h);
    return lowest->next(h);
  };

  std::size_t explicit_pos = 0;
  while (h.patch_count() > 0) {
    const std::size_t step_index = trace.steps.size();
    VertexId v = 0;
    if (const auto* r = std::get_if<Randomized>(&order)) {
      const auto tokens = h.patch_tokens();
      v = h.edge(tokens[uniform_below(*r->rng, tokens.size())])[0];
    } else if (const auto* ex = std::get_if<Explicit>(&order);
               ex && explicit_pos < ex->order.size()) {
      v = ex->order[explicit_pos++];
      if (v >= h.n_vertices() || h.removed(v) || h.patches_on(v) == 0) {
        throw CollapseOrderError(step_index, v);
      }
    } else {
      v = lowest_next();
    }

    SizeCensus before;
    if (options.check_invariants) before = census(h);
    const RemovalSummary summary = h.remove_vertex(v);
    if (lowest) lowest->after_removal(h, v);

    CollapseStep step;
    step.n = static_cast<std::int64_t>(step_index) + 1;
    step.removed_vertex = v;
    step.patches_on_vertex = summary.patches_removed;
    step.new_patches = summary.new_patches;
    step.Y = static_cast<std::int64_t>(h.patch_count());
    step.Z = h.debris_count();
    if (options.check_invariants) check_step(h, before, step, initial_edges);
    trace.steps.push_back(step);
    trace.identifiable_vertices.push_back(v);
  }

  std::sort(trace.identifiable_vertices.begin(), trace.identifiable_vertices.end());
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const auto vs = h.original_edge(e);
    trace.identifiable_edge_count +=
        std::all_of(vs.begin(), vs.end(), [&](VertexId u) { return h.removed(u); });
  }
  trace.terminal_debris = h.debris_count();
  return trace;
}

std::vector<VertexId> identifiable_oracle(const Hypergraph& h) {
  std::vector<std::uint8_t> in(h.n_vertices(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (EdgeId e = 0; e < h.edge_count(); ++e) {
      const auto vs = h.edge(e);
      std::size_t outside = 0;
      VertexId candidate = 0;
      for (VertexId u : vs) {
        if (!in[u]) {
          ++outside;
          candidate = u;
        }
      }
      if (outside == 1) {
        in[candidate] = 1;
        changed = true;
      }
    }
  }
  std::vector<VertexId> out;
  for (VertexId v = 0; v < h.n_vertices(); ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

std::int64_t edges_within(const Hypergraph& h, const std::vector<VertexId>& vertices) {
  std::int64_t count = 0;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const auto vs = h.edge(e);
    count += std::all_of(vs.begin(), vs.end(), [&](VertexId u) {
      return std::binary_search(vertices.begin(), vertices.end(), u);
    });
  }
  return count;
}

void write_trace_csv(std::ostream& out, const CollapseTrace& trace) {
  out << "n,vertex,Y,Z,W,U\n";
  out << "0,," << trace.initial_patches << ',' << trace.initial_debris << ",,\n";
  for (const auto& s : trace.steps) {
    out << s.n << ',' << s.removed_vertex << ',' << s.Y << ',' << s.Z << ',' << s.W() << ','
        << s.new_patches << '\n';
  }
}

}  // namespace hypercollapse
