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
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "hypercollapse/harness.hpp"
#include "oracles.hpp"

namespace hypercollapse {
namespace {

bool same(const TrialSummary& a, const TrialSummary& b) {
  return a.trial_index == b.trial_index && a.seed == b.seed && a.v_frac == b.v_frac &&
         a.edge_frac == b.edge_frac && a.steps == b.steps && a.edge_count == b.edge_count;
}

TEST(Engine, NamesRoundTrip) {
  EXPECT_EQ(parse_engine("full"), Engine::kFull);
  EXPECT_EQ(parse_engine("chain"), Engine::kChain);
  EXPECT_STREQ(to_string(Engine::kFull), "full");
  EXPECT_THROW(parse_engine("turbo"), std::invalid_argument);
}

TEST(RunExperiment, SingleTrialEqualsDirectCall) {
  ExperimentConfig c;
  c.series = BetaSeries({0.1, 0.3, 0.5});
  c.N = 30;
  c.trials = 1;
  c.master_seed = 77;
  c.engine = Engine::kFull;
  const auto r = run_experiment(c);
  ASSERT_EQ(r.trials.size(), 1u);
  EXPECT_TRUE(same(r.trials[0], run_full_trial(c.series, 30, 77, 0, true)));

  // The same stream drives a hand-built engine run.
  Rng rng(77, 0);
  auto h = sample_poisson(c.series, 30, rng);
  const auto t = collapse(h, Randomized{&rng});
  EXPECT_EQ(r.trials[0].steps, static_cast<std::int64_t>(t.identifiable_vertices.size()));
  EXPECT_EQ(r.trials[0].edge_count, t.identifiable_edge_count);
}

TEST(RunExperiment, DeterministicAcrossWorkerCounts) {
  for (Engine engine : {Engine::kFull, Engine::kChain}) {
    ExperimentConfig c;
    c.series = BetaSeries({0.1, 0.3, 0.5});
    c.N = 200;
    c.trials = 64;
    c.master_seed = 9;
    c.engine = engine;
    c.record = Record::kTrajectories;
    c.workers = 1;
    const auto one = run_experiment(c);
    c.workers = 4;
    const auto four = run_experiment(c);
    const auto again = run_experiment(c);
    ASSERT_EQ(one.trials.size(), 64u);
    for (std::size_t i = 0; i < one.trials.size(); ++i) {
      EXPECT_EQ(one.trials[i].trial_index, static_cast<std::int64_t>(i));
      EXPECT_TRUE(same(one.trials[i], four.trials[i]));
      EXPECT_TRUE(same(one.trials[i], again.trials[i]));
    }
    EXPECT_EQ(one.trajectories, four.trajectories);
  }
}

TEST(RunExperiment, ErrorsCarryTrialIndex) {
  ExperimentConfig c;
  c.series = BetaSeries({0.0, 0.0, 0.0, 1.0});
  c.N = 2;  // 3-edges cannot fit
  c.trials = 3;
  c.engine = Engine::kFull;
  try {
    run_experiment(c);
    FAIL() << "expected TrialError";
  } catch (const TrialError& e) {
    EXPECT_EQ(e.trial_index(), 0);
  }
  c.trials = 0;
  EXPECT_THROW(run_experiment(c), std::invalid_argument);
}

TEST(CompareDistributions, IdenticalSamples) {
  const std::vector<std::int64_t> a = {1, 2, 2, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 5, 6, 7, 8};
  std::vector<std::int64_t> big;
  for (int i = 0; i < 50; ++i) big.insert(big.end(), a.begin(), a.end());
  const auto r = compare_distributions(big, big);
  EXPECT_DOUBLE_EQ(r.p_value, 1.0);
  EXPECT_EQ(r.statistic, 0.0);
}

TEST(CompareDistributions, SingleBinIsTriviallyEqual) {
  const std::vector<std::int64_t> a(100, 4), b(80, 4);
  const auto r = compare_distributions(a, b);
  EXPECT_TRUE(r.trivially_equal);
  EXPECT_EQ(r.p_value, 1.0);
  EXPECT_THROW(compare_distributions({}, b), std::invalid_argument);
}

TEST(CompareDistributions, DetectsShift) {
  Rng rng(1, 0);
  std::vector<std::int64_t> a, b;
  for (int i = 0; i < 5000; ++i) {
    a.push_back(poisson(rng, 5.0));
    b.push_back(poisson(rng, 5.5));
  }
  EXPECT_LT(compare_distributions(a, b).p_value, 1e-6);
}

TEST(CompareDistributions, CalibratedUnderTheNull) {
  // Two Poisson(5) samples: over 100 repetitions the rejection count at the
  // 1% level is Binomial(100, 0.01); more than 6 happens with prob < 1e-3.
  Rng rng(2, 0);
  int rejections = 0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<std::int64_t> a, b;
    for (int i = 0; i < 10000; ++i) {
      a.push_back(poisson(rng, 5.0));
      b.push_back(poisson(rng, 5.0));
    }
    if (compare_distributions(a, b).p_value < 0.01) ++rejections;
  }
  EXPECT_LE(rejections, 6);
}

TEST(TwoPointMass, ClassifiesWithinTolerance) {
  const std::vector<double> cands = {0.5, 0.99};
  const std::vector<double> all_c(10, 0.5);
  const auto m = two_point_mass(all_c, cands, 0.05);
  EXPECT_DOUBLE_EQ(m.mass[0], 1.0);
  EXPECT_EQ(m.unclassified, 0u);
  const std::vector<double> v = {0.46, 0.5, 0.56, 0.95, 1.0, 0.7};
  const auto r = two_point_mass(v, cands, 0.05);
  EXPECT_EQ(r.counts[0], 2u);
  EXPECT_EQ(r.counts[1], 2u);
  EXPECT_EQ(r.unclassified, 2u);
  EXPECT_EQ(r.total, 6u);
}

TEST(TrajectoryDeviation, FabricatedFluidPathIsExact) {
  // Curve given by a lambda so that the fabricated states are exact integers.
  const auto curve = [](double t) { return fluid::State{t, 0.5 * (1 - t), 0.25 * t}; };
  const std::int64_t N = 400;
  std::vector<ChainState> traj;
  for (std::int64_t n = 0; n <= N / 2; n += 4) traj.push_back({N, n, (N - n) / 2, n / 4});
  const auto d = trajectory_deviation({traj, traj}, curve);
  ASSERT_EQ(d.sups.size(), 2u);
  EXPECT_LE(d.max, 1e-15);
  EXPECT_LE(d.median, 1e-15);
  EXPECT_EQ(d.fraction_above(1e-12), 0.0);
}

TEST(TrajectoryDeviation, SeriesOverloadUsesClosedForm) {
  const BetaSeries s({0.0, 0.2, 0.3});
  const std::int64_t N = 1000;
  std::vector<ChainState> traj;
  for (std::int64_t n = 0; n <= 100; ++n) {
    const auto x = fluid::state_at(s, static_cast<double>(n) / N);
    traj.push_back({N, n, std::llround(x[1] * N), std::llround(x[2] * N)});
  }
  const auto d = trajectory_deviation({traj}, s);
  EXPECT_LE(d.max, std::sqrt(2.0) * 0.5 / N + 1e-12);
}

TEST(Moments, Unbiased) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0};
  const auto m = moments(v);
  EXPECT_DOUBLE_EQ(m.mean, 2.5);
  EXPECT_DOUBLE_EQ(m.variance, 5.0 / 3.0);
}

TEST(Output, TrialsCsvAndSummaryJson) {
  std::vector<TrialSummary> t = {{0, 5, 0.25, 0.5, 10, 20}};
  std::ostringstream out;
  write_trials_csv(out, t);
  EXPECT_EQ(out.str(), "trial,seed,v_frac,edge_frac,steps\n0,5,0.25,0.5,10\n");
  const auto j = run_summary_json(40, 10, 20, 20, 5);
  EXPECT_EQ(j["v_star"], 10);
  EXPECT_EQ(j["seed"], 5);
}

TEST(Manifest, ContainsAnalyticAndEmpirical) {
  ExperimentConfig c;
  c.series = example21(0.1, 2.0);
  c.N = 20000;
  c.trials = 8;
  c.master_seed = 3;
  const auto r = run_experiment(c);
  const auto m = experiment_manifest(c, r, 0.01);
  EXPECT_EQ(m["config"]["seed"], 3);
  EXPECT_EQ(m["config"]["engine"], "chain");
  EXPECT_NEAR(m["analytic"]["z_star"].get<double>(), oracle::example21_root(0.1, 2.0), 1e-10);
  EXPECT_FALSE(m["analytic"]["critical"].get<bool>());
  EXPECT_TRUE(m["tests"]["v_frac_within"].get<bool>());
  EXPECT_TRUE(m["empirical"].contains("edge_frac_mean"));
}

TEST(Manifest, CriticalSeriesReportsMasses) {
  ExperimentConfig c;
  c.series = BetaSeries(oracle::critical_series());
  c.N = 2000;
  c.trials = 20;
  const auto m = experiment_manifest(c, run_experiment(c), 0.05);
  EXPECT_TRUE(m["analytic"]["critical"].get<bool>());
  EXPECT_EQ(m["tests"]["candidates"].size(), 2u);
  EXPECT_TRUE(m.contains("notes"));
}

}  // namespace
}  // namespace hypercollapse
