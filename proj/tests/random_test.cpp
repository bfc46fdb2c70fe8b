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

#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "hypercollapse/random.hpp"
#include "oracles.hpp"

namespace hypercollapse {
namespace {

TEST(Philox, KnownAnswerVectors) {
  using B = Philox4x32::Block;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::encrypt(B{0, 0, 0, 0}, K{0, 0}),
            (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::encrypt(B{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                                K{0xffffffff, 0xffffffff}),
            (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::encrypt(B{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                                K{0xa4093822, 0x299f31d0}),
            (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, EngineReadsTheBlockSequence) {
  Rng rng(0, 0);
  const auto b0 = Philox4x32::encrypt({0, 0, 0, 0}, {0, 0});
  const auto b1 = Philox4x32::encrypt({1, 0, 0, 0}, {0, 0});
  EXPECT_EQ(rng(), b0[0] | (std::uint64_t{b0[1]} << 32));
  EXPECT_EQ(rng(), b0[2] | (std::uint64_t{b0[3]} << 32));
  EXPECT_EQ(rng(), b1[0] | (std::uint64_t{b1[1]} << 32));
}

TEST(Philox, StreamsAndSeedsDiffer) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    for (std::uint64_t stream = 0; stream < 4; ++stream) {
      Rng rng(seed, stream);
      firsts.insert(rng());
    }
  }
  EXPECT_EQ(firsts.size(), 16u);
  Rng a(7, 3), b(7, 3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}

TEST(Uniform, BelowIsUnbiased) {
  Rng rng(11, 0);
  std::vector<std::int64_t> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) ++counts[uniform_below(rng, 7)];
  const auto gof = oracle::chi_square_gof(counts, std::vector<double>(7, 1.0 / 7.0));
  EXPECT_GT(gof.p_value, 1e-3);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
}

TEST(Uniform, OpenIntervalExcludesEndpoints) {
  Rng rng(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double u = uniform_open01(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Normal, MomentsMatch) {
  Rng rng(3, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = standard_normal(rng);
    s += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(s4 / n, 3.0, 4.0 * std::sqrt(96.0 / n));
}

void check_poisson(double mean, std::uint64_t seed) {
  Rng rng(seed, 0);
  const int draws = 100000;
  const auto cells = static_cast<std::size_t>(mean + 10.0 * std::sqrt(mean) + 15.0);
  std::vector<std::int64_t> counts(cells + 1, 0);
  for (int i = 0; i < draws; ++i) {
    const auto k = static_cast<std::size_t>(poisson(rng, mean));
    ++counts[std::min(k, cells)];
  }
  std::vector<double> probs(cells + 1, 0.0);
  double head = 0.0;
  for (std::size_t k = 0; k < cells; ++k) {
    probs[k] = oracle::poisson_pmf(mean, static_cast<std::int64_t>(k));
    head += probs[k];
  }
  probs[cells] = std::max(0.0, 1.0 - head);
  const auto gof = oracle::chi_square_gof(counts, probs);
  EXPECT_GT(gof.p_value, 1e-3) << "mean " << mean << " stat " << gof.statistic;
}

TEST(Poisson, InversionRegimeMatchesPmf) {
  check_poisson(0.3, 21);
  check_poisson(2.0, 22);
  check_poisson(9.5, 23);
}

TEST(Poisson, RejectionRegimeMatchesPmf) {
  check_poisson(10.0, 24);
  check_poisson(57.3, 25);
  check_poisson(1234.5, 26);
}

TEST(Poisson, EdgeCases) {
  Rng rng(0, 0);
  EXPECT_EQ(poisson(rng, 0.0), 0);
  EXPECT_THROW(poisson(rng, -1.0), std::invalid_argument);
  EXPECT_THROW(poisson(rng, NAN), std::invalid_argument);
}

void check_binomial(std::int64_t n, double p, std::uint64_t seed) {
  Rng rng(seed, 0);
  const int draws = 100000;
  std::vector<std::int64_t> counts(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(binomial(rng, n, p))];
  std::vector<double> probs(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) probs[static_cast<std::size_t>(k)] = oracle::binomial_pmf(n, p, k);
  const auto gof = oracle::chi_square_gof(counts, probs);
  EXPECT_GT(gof.p_value, 1e-3) << "n " << n << " p " << p << " stat " << gof.statistic;
}

TEST(Binomial, InversionRegimeMatchesPmf) {
  check_binomial(10, 0.3, 31);
  check_binomial(1000, 0.005, 32);
  check_binomial(20, 0.8, 33);
}

TEST(Binomial, RejectionRegimeMatchesPmf) {
  check_binomial(100, 0.5, 34);
  check_binomial(5000, 0.01, 35);
  check_binomial(300, 0.93, 36);
}

TEST(Binomial, EdgeCases) {
  Rng rng(0, 0);
  EXPECT_EQ(binomial(rng, 0, 0.5), 0);
  EXPECT_EQ(binomial(rng, 10, 0.0), 0);
  EXPECT_EQ(binomial(rng, 10, 1.0), 10);
  EXPECT_THROW(binomial(rng, -1, 0.5), std::invalid_argument);
  EXPECT_THROW(binomial(rng, 5, 1.5), std::invalid_argument);
}

}  // namespace
}  // namespace hypercollapse
