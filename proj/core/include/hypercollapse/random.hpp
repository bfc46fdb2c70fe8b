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

#ifndef HYPERCOLLAPSE_RANDOM_HPP_
#define HYPERCOLLAPSE_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace hypercollapse {

// Philox4x32-10 (Salmon et al., SC'11). The 64-bit key is the master seed and
// the upper half of the 128-bit counter selects an independent stream, so
// (seed, stream) pairs give reproducible, non-overlapping sequences of up to
// 2^66 outputs without any shared state.
class Philox4x32 {
 public:
  using result_type = std::uint64_t;
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  Philox4x32() : Philox4x32(0, 0) {}
  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // The raw bijection: ten Philox rounds of `counter` under `key`.
  static Block encrypt(Block counter, Key key);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  Key key_;
  Block counter_;
  Block buffer_{};
  int available_ = 0;  // unread 64-bit words in buffer_
};

using Rng = Philox4x32;

// Uniform double on [0, 1) with 53 random bits.
double uniform01(Rng& rng);
// Uniform double on the open interval (0, 1).
double uniform_open01(Rng& rng);
// Uniform integer on [0, bound). bound must be positive. Lemire's method.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

double standard_normal(Rng& rng);

// Exact Poisson variate: inversion for mean < 10, PTRS transformed rejection
// (Hormann 1993) otherwise.
std::int64_t poisson(Rng& rng, double mean);

// Exact binomial variate: inversion when min(p,1-p) * trials < 10, BTRS
// transformed rejection (Hormann 1993) otherwise.
std::int64_t binomial(Rng& rng, std::int64_t trials, double p);

}  // namespace hypercollapse

#endif  // HYPERCOLLAPSE_RANDOM_HPP_
