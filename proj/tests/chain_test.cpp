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
#include <numeric>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "hypercollapse/chain.hpp"
#include "oracles.hpp"

namespace hypercollapse {
namespace {

struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
  Fraction& operator+=(const Fraction& o) {
    const std::int64_t d = std::lcm(den, o.den);
    num = num * (d / den) + o.num * (d / o.den);
    den = d;
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
    return *this;
  }
};

std::int64_t choose(std::int64_t n, std::int64_t k) {
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(Lambda2, InitialValue) {
  const BetaSeries s({0.0, 0.3, 0.7, 0.2});
  for (std::int64_t n : {3, 10, 1000}) {
    EXPECT_NEAR(lambda2(s, n, 0), 2.0 * 0.7 / static_cast<double>(n - 1), 1e-16);
  }
}

TEST(Lambda2, ExactRationalOracle) {
  const std::int64_t N = 20, n = 5;
  Fraction sum;
  for (std::int64_t i = 0; i <= 2; ++i) sum += {N * choose(n, i), choose(N, i + 2)};
  const double expected = static_cast<double>(sum.num) / static_cast<double>(sum.den);
  EXPECT_NEAR(lambda2(BetaSeries({0, 0, 1, 1, 1}), N, n), expected, 1e-14);
}

TEST(Lambda2, RejectsOutOfRange) {
  const BetaSeries s({0, 0, 1});
  EXPECT_THROW(lambda2(s, 10, 9), std::invalid_argument);
  EXPECT_THROW(lambda2(s, 10, -1), std::invalid_argument);
  EXPECT_NO_THROW(lambda2(s, 10, 8));
}

TEST(Lambda2, NonnegativeAndNearBetaSecond) {
  const BetaSeries s({0.0, 0.2, 0.3, 0.1});
  double previous = INFINITY;
  for (std::int64_t N : {100, 1000, 10000}) {
    double worst = 0.0;
    for (std::int64_t n = 0; n <= (9 * N) / 10; ++n) {
      const double v = lambda2(s, N, n);
      ASSERT_GE(v, 0.0);
      const double t = static_cast<double>(n) / static_cast<double>(N);
      worst = std::max(worst, std::abs(static_cast<double>(N) * v - eval(s, t, 2)));
    }
    EXPECT_LT(worst, previous);
    previous = worst;
  }
}

TEST(Step, SinglePatchHasNoW) {
  const BetaSeries s({0.0, 0.3, 0.5});
  Rng rng(1, 0);
  for (int i = 0; i < 1000; ++i) {
    const auto r = step({100, 10, 1, 4}, s, rng);
    ASSERT_EQ(r.W, 0);
    ASSERT_EQ(r.next.Y, r.U);
    ASSERT_EQ(r.next.Z, 5);
  }
}

TEST(Step, NoTwoEdgesMeansNoNewPatches) {
  const BetaSeries s({0.0, 0.3});
  Rng rng(2, 0);
  ChainState st{500, 0, 60, 0};
  while (!st.absorbed()) {
    const auto r = step(st, s, rng);
    ASSERT_EQ(r.U, 0);
    ASSERT_LT(r.next.Y, st.Y);
    st = r.next;
  }
}

TEST(Step, PerStepIdentities) {
  const BetaSeries s({0.1, 0.3, 0.5, 0.4});
  Rng rng(3, 0);
  for (int rep = 0; rep < 100; ++rep) {
    ChainState st{200, 0, 20, 3};
    while (!st.absorbed() && st.n < st.N) {
      const auto r = step(st, s, rng);
      ASSERT_EQ(r.next.n, st.n + 1);
      ASSERT_EQ((r.next.Y + r.next.Z) - (st.Y + st.Z), r.U);
      ASSERT_EQ(r.next.Z - st.Z, 1 + r.W);
      st = r.next;
    }
  }
}

TEST(Step, RejectsAbsorbedAndExhausted) {
  const BetaSeries s({0.0, 0.3, 0.5});
  Rng rng(4, 0);
  EXPECT_THROW(step({10, 3, 0, 0}, s, rng), std::logic_error);
  EXPECT_THROW(step({10, 10, 1, 0}, s, rng), std::logic_error);
  // Last vertex: no room for 2-edges, U = 0.
  const auto r = step({10, 9, 1, 0}, s, rng);
  EXPECT_EQ(r.U, 0);
  EXPECT_EQ(r.next.Y, 0);
}

TEST(Step, MeanIncrementMatchesMomentOracle) {
  const BetaSeries s({0.0, 0.3, 0.5, 0.4});
  const ChainState st{1000, 300, 50, 7};
  const double rest = static_cast<double>(st.N - st.n);
  const double pw = 1.0 / rest;
  const double mu_u = (rest - 1.0) * lambda2(s, st.N, st.n);
  const double mean = -1.0 - (st.Y - 1) * pw + mu_u;
  const double var = (st.Y - 1) * pw * (1 - pw) + mu_u;
  Rng rng(5, 0);
  const int draws = 100000;
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += static_cast<double>(step(st, s, rng).next.Y - st.Y);
  EXPECT_NEAR(sum / draws, mean, 3.0 * std::sqrt(var / draws));
}

TEST(Run, NoPatchesMeansImmediateStop) {
  Rng rng(6, 0);
  const auto r = run(BetaSeries({0.5, 0.0, 1.0}), 1000, rng, {.record_trajectory = true});
  EXPECT_EQ(r.v_star_count, 0);
  EXPECT_EQ(r.terminal.n, 0);
  EXPECT_EQ(r.lambda_star_count, r.terminal.Z);
  ASSERT_EQ(r.trajectory.size(), 1u);
}

TEST(Run, LinearSeriesLimit) {
  const BetaSeries s({0.0, 0.2});
  const std::int64_t N = 100000;
  double sum = 0.0;
  const int reps = 20;
  for (int i = 0; i < reps; ++i) {
    Rng rng(7, static_cast<std::uint64_t>(i));
    sum += static_cast<double>(run(s, N, rng).v_star_count) / N;
  }
  EXPECT_NEAR(sum / reps, 1.0 - std::exp(-0.2), 0.005);
  EXPECT_NEAR(analyze(s).z_star, 1.0 - std::exp(-0.2), 1e-10);
}

TEST(Run, TrajectoryShape) {
  Rng rng(8, 0);
  const auto r = run(BetaSeries({0.1, 0.3, 0.6}), 500, rng, {.record_trajectory = true});
  ASSERT_EQ(r.trajectory.size(), static_cast<std::size_t>(r.v_star_count) + 1);
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
    EXPECT_EQ(r.trajectory[i].n, static_cast<std::int64_t>(i));
    EXPECT_GT(r.trajectory[i].Z, r.trajectory[i - 1].Z);
    if (i + 1 < r.trajectory.size()) {
      EXPECT_GE(r.trajectory[i].Y, 1);
    }
  }
  EXPECT_EQ(r.trajectory.back(), r.terminal);
  EXPECT_TRUE(r.terminal.absorbed() || r.terminal.n == r.terminal.N);
  std::ostringstream out;
  write_trajectory_csv(out, r.trajectory);
  EXPECT_EQ(out.str().substr(0, 6), "n,Y,Z\n");
}

}  // namespace
}  // namespace hypercollapse
