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

#ifndef HYPERCOLLAPSE_CHAIN_HPP_
#define HYPERCOLLAPSE_CHAIN_HPP_

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hypercollapse/beta.hpp"
#include "hypercollapse/random.hpp"

namespace hypercollapse {

// Patch count Y and debris count Z after n randomized collapse steps on a
// Poisson(beta) hypergraph with N vertices.
struct ChainState {
  std::int64_t N = 0;
  std::int64_t n = 0;
  std::int64_t Y = 0;
  std::int64_t Z = 0;

  bool absorbed() const { return Y == 0; }
  friend bool operator==(const ChainState&, const ChainState&) = default;
};

// Poisson parameter of the number of copies of a fixed 2-set after n vertices
// have been removed: N sum_i C(n,i) beta_{i+2} / C(N,i+2). Evaluated with
// running products of the falling-factorial ratios. Requires 0 <= n <= N-2.
double lambda2(const BetaSeries& series, std::int64_t N, std::int64_t n);

struct ChainStep {
  ChainState next;
  std::int64_t W = 0;  // other patches on the chosen vertex
  std::int64_t U = 0;  // 2-edges through it
};

// One transition. Requires Y >= 1 and n <= N-1; throws std::logic_error
// otherwise.
ChainStep step(const ChainState& state, const BetaSeries& series, Rng& rng);

struct ChainRun {
  std::vector<ChainState> trajectory;  // n = 0..v_star_count when recorded
  std::int64_t v_star_count = 0;       // first n with Y = 0
  std::int64_t lambda_star_count = 0;  // Z at that n
  ChainState terminal;
};

struct ChainOptions {
  bool record_trajectory = false;
};

// Y_0 ~ Poisson(N beta_1), Z_0 ~ Poisson(N beta_0), then steps until Y = 0.
ChainRun run(const BetaSeries& series, std::int64_t N, Rng& rng, const ChainOptions& options = {});

// CSV columns n,Y,Z.
void write_trajectory_csv(std::ostream& out, const std::vector<ChainState>& trajectory);

}  // namespace hypercollapse

#endif  // HYPERCOLLAPSE_CHAIN_HPP_
