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

#include "hypercollapse/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hypercollapse {

namespace {
constexpr std::uint32_t kNoSlot = std::numeric_limits<std::uint32_t>::max();
}  // namespace

Hypergraph::Hypergraph(std::size_t n_vertices)
    : n_vertices_(n_vertices), incidence_(n_vertices), removed_(n_vertices, 0) {
  if (n_vertices >= std::numeric_limits<VertexId>::max()) {
    throw std::invalid_argument("too many vertices");
  }
}

EdgeId Hypergraph::add_edge(std::span<const VertexId> vertices) {
  std::vector<VertexId> sorted(vertices.begin(), vertices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("edge repeats a vertex");
  }
  for (VertexId v : sorted) {
    if (v >= n_vertices_) throw std::invalid_argument("edge vertex out of range");
    if (removed_[v]) throw std::invalid_argument("edge uses a removed vertex");
  }
  if (offsets_.size() >= kNoSlot) throw std::length_error("too many edges");

  const auto e = static_cast<EdgeId>(offsets_.size());
  offsets_.push_back(data_.size());
  sizes_.push_back(static_cast<std::uint32_t>(sorted.size()));
  original_sizes_.push_back(static_cast<std::uint32_t>(sorted.size()));
  patch_slot_.push_back(kNoSlot);
  data_.insert(data_.end(), sorted.begin(), sorted.end());
  for (VertexId v : sorted) incidence_[v].push_back(e);
  if (sorted.size() == 1) add_patch(e);
  if (sorted.empty()) ++debris_;
  return e;
}

std::int64_t Hypergraph::patches_on(VertexId v) const {
  if (v >= n_vertices_) throw std::out_of_range("vertex out of range");
  if (removed_[v]) return 0;
  std::int64_t count = 0;
  for (EdgeId e : incidence_[v]) count += sizes_[e] == 1;
  return count;
}

void Hypergraph::add_patch(EdgeId e) {
  patch_slot_[e] = static_cast<std::uint32_t>(patches_.size());
  patches_.push_back(e);
}

void Hypergraph::drop_patch(EdgeId e) {
  const std::uint32_t slot = patch_slot_[e];
  const EdgeId last = patches_.back();
  patches_[slot] = last;
  patch_slot_[last] = slot;
  patches_.pop_back();
  patch_slot_[e] = kNoSlot;
}

RemovalSummary Hypergraph::remove_vertex(VertexId v) {
  if (v >= n_vertices_) throw std::out_of_range("vertex out of range");
  if (patches_on(v) == 0) {
    throw std::logic_error("vertex " + std::to_string(v) +
                           " carries no patch; collapse not permitted");
  }
  RemovalSummary summary;
  for (EdgeId e : incidence_[v]) {
    VertexId* first = data_.data() + offsets_[e];
    VertexId* last = first + sizes_[e];
    VertexId* pos = std::lower_bound(first, last, v);
    std::rotate(pos, pos + 1, last);
    const std::uint32_t old_size = sizes_[e]--;
    if (old_size == 1) {
      drop_patch(e);
      ++debris_;
      ++summary.patches_removed;
    } else if (old_size == 2) {
      add_patch(e);
      ++summary.new_patches;
    }
  }
  summary.new_debris = summary.patches_removed;
  removed_[v] = 1;
  return summary;
}

bool Hypergraph::indices_consistent() const {
  std::int64_t debris = 0;
  std::size_t patches = 0;
  std::vector<std::vector<EdgeId>> rebuilt(n_vertices_);
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto vs = edge(e);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (vs[i] >= n_vertices_ || removed_[vs[i]]) return false;
      if (i > 0 && vs[i - 1] >= vs[i]) return false;
      rebuilt[vs[i]].push_back(e);
    }
    if (vs.empty()) ++debris;
    if (vs.size() == 1) {
      ++patches;
      if (patch_slot_[e] == kNoSlot || patches_[patch_slot_[e]] != e) return false;
    } else if (patch_slot_[e] != kNoSlot) {
      return false;
    }
  }
  if (debris != debris_ || patches != patches_.size()) return false;
  for (VertexId v = 0; v < n_vertices_; ++v) {
    if (removed_[v]) {
      if (!rebuilt[v].empty()) return false;
      continue;
    }
    auto stored = incidence_[v];
    std::sort(stored.begin(), stored.end());
    if (stored != rebuilt[v]) return false;
  }
  return true;
}

Hypergraph Hypergraph::deduplicated() const {
  std::set<std::vector<VertexId>> distinct;
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto vs = edge(e);
    distinct.emplace(vs.begin(), vs.end());
  }
  Hypergraph out(n_vertices_);
  for (const auto& vs : distinct) out.add_edge(vs);
  return out;
}

void Hypergraph::write(std::ostream& out) const {
  out << "N=" << n_vertices_ << '\n';
  for (EdgeId e = 0; e < edge_count(); ++e) {
    const auto vs = edge(e);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i > 0) out << ' ';
      out << vs[i];
    }
    out << '\n';
  }
}

Hypergraph Hypergraph::read(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("N=", 0) != 0) {
    throw std::invalid_argument("hypergraph text must start with N=<int>");
  }
  std::size_t n = 0;
  try {
    std::size_t used = 0;
    n = std::stoull(line.substr(2), &used);
    if (used != line.size() - 2) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad vertex count in header: " + line);
  }
  Hypergraph h(n);
  std::vector<VertexId> vs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    vs.clear();
    std::istringstream fields(line);
    long long id = 0;
    while (fields >> id) {
      if (id < 0) throw std::invalid_argument("negative vertex id on line " + std::to_string(line_no));
      vs.push_back(static_cast<VertexId>(id));
    }
    if (!fields.eof()) {
      throw std::invalid_argument("malformed edge on line " + std::to_string(line_no));
    }
    h.add_edge(vs);
  }
  return h;
}

std::vector<VertexId> uniform_subset(std::size_t n, std::size_t j, Rng& rng,
                                     std::vector<VertexId>& scratch) {
  if (j > n) throw std::invalid_argument("uniform_subset: j exceeds n");
  if (scratch.size() != n) {
    scratch.resize(n);
    std::iota(scratch.begin(), scratch.end(), VertexId{0});
  }
  for (std::size_t i = 0; i < j; ++i) {
    const std::size_t r = i + uniform_below(rng, n - i);
    std::swap(scratch[i], scratch[r]);
  }
  std::vector<VertexId> out(scratch.begin(), scratch.begin() + j);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VertexId> uniform_subset(std::size_t n, std::size_t j, Rng& rng) {
  std::vector<VertexId> scratch;
  return uniform_subset(n, j, rng, scratch);
}

Hypergraph sample_poisson(const BetaSeries& series, std::size_t n_vertices, Rng& rng) {
  if (n_vertices == 0) throw std::invalid_argument("sample_poisson: need N >= 1");
  const auto& c = series.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] > 0.0 && j > n_vertices) {
      throw std::invalid_argument("sample_poisson: beta_" + std::to_string(j) +
                                  " > 0 but there are no " + std::to_string(j) +
                                  "-subsets of " + std::to_string(n_vertices) + " vertices");
    }
  }
  Hypergraph h(n_vertices);
  std::vector<VertexId> scratch;
  const double n = static_cast<double>(n_vertices);
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0.0) continue;
    const std::int64_t m = poisson(rng, n * c[j]);
    for (std::int64_t k = 0; k < m; ++k) {
      h.add_edge(uniform_subset(n_vertices, j, rng, scratch));
    }
  }
  return h;
}

}  // namespace hypercollapse
