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

#ifndef HYPERCOLLAPSE_HARNESS_HPP_
#define HYPERCOLLAPSE_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hypercollapse/beta.hpp"
#include "hypercollapse/chain.hpp"
#include "hypercollapse/collapse.hpp"
#include "hypercollapse/fluid.hpp"

namespace hypercollapse {

enum class Engine { kFull, kChain };
enum class Record { kTerminalOnly, kTrajectories };

const char* to_string(Engine engine);
Engine parse_engine(const std::string& name);

struct ExperimentConfig {
  BetaSeries series;
  std::int64_t N = 1;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;
  Engine engine = Engine::kChain;
  Record record = Record::kTerminalOnly;
  unsigned workers = 1;
  // Share of full-engine trials that run with per-step invariant checks.
  double invariant_check_fraction = 0.01;
};

// Trial i draws from Philox stream (master_seed, i); `seed` is the master seed.
struct TrialSummary {
  std::int64_t trial_index = 0;
  std::uint64_t seed = 0;
  double v_frac = 0.0;
  double edge_frac = 0.0;
  std::int64_t steps = 0;        // |V*|
  std::int64_t edge_count = 0;   // |Lambda*|
};

struct ExperimentResult {
  std::vector<TrialSummary> trials;                   // ordered by trial index
  std::vector<std::vector<ChainState>> trajectories;  // when recorded
};

class TrialError : public std::runtime_error {
 public:
  TrialError(std::int64_t trial_index, const std::string& what);
  std::int64_t trial_index() const { return trial_index_; }

 private:
  std::int64_t trial_index_;
};

// Runs every trial; the result does not depend on `workers`.
// Engine failures are rethrown as TrialError carrying the trial index.
ExperimentResult run_experiment(const ExperimentConfig& config);

// One full-engine trial on stream (seed, trial_index).
TrialSummary run_full_trial(const BetaSeries& series, std::int64_t N, std::uint64_t seed,
                            std::int64_t trial_index, bool check_invariants,
                            std::vector<ChainState>* trajectory = nullptr);
// One chain trial on stream (seed, trial_index).
TrialSummary run_chain_trial(const BetaSeries& series, std::int64_t N, std::uint64_t seed,
                             std::int64_t trial_index,
                             std::vector<ChainState>* trajectory = nullptr);

struct ChiSquareReport {
  double statistic = 0.0;
  std::int64_t dof = 0;
  double p_value = 1.0;
  std::size_t bins = 0;
  bool trivially_equal = false;  // everything fell in a single bin
};

// Two-sample chi-square homogeneity test on integer outcomes. Adjacent values
// are pooled until both samples expect at least 5 counts per bin.
ChiSquareReport compare_distributions(std::span<const std::int64_t> a,
                                      std::span<const std::int64_t> b);

struct MassReport {
  std::vector<std::size_t> counts;  // per candidate
  std::vector<double> mass;         // counts / total values
  std::size_t unclassified = 0;
  std::size_t total = 0;
};

// Assigns each value to its nearest candidate when within `tol`; anything
// farther is left unclassified.
MassReport two_point_mass(std::span<const double> values, std::span<const double> candidates,
                          double tol);

struct DeviationStats {
  std::vector<double> sups;  // one per trajectory
  double median = 0.0;
  double max = 0.0;

  double fraction_above(double threshold) const;
};

using FluidCurve = std::function<fluid::State(double)>;

// Per trajectory, sup over recorded steps of the Euclidean distance between
// (n/N, Y/N, Z/N) and curve(n/N). Points with n/N >= 1 are skipped.
DeviationStats trajectory_deviation(const std::vector<std::vector<ChainState>>& trajectories,
                                    const FluidCurve& curve);
DeviationStats trajectory_deviation(const std::vector<std::vector<ChainState>>& trajectories,
                                    const BetaSeries& series);

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
};
SampleMoments moments(std::span<const double> values);

// CSV columns trial,seed,v_frac,edge_frac,steps.
void write_trials_csv(std::ostream& out, std::span<const TrialSummary> trials);

// {n_vertices, v_star, lambda_star, debris_final, seed}
nlohmann::json run_summary_json(std::int64_t n_vertices, std::int64_t v_star,
                                std::int64_t lambda_star, std::int64_t debris_final,
                                std::uint64_t seed);

// Config echo, analytic predictions and empirical comparison of the trial means
// against them at the given absolute tolerance.
nlohmann::json experiment_manifest(const ExperimentConfig& config, const ExperimentResult& result,
                                   double tolerance);

}  // namespace hypercollapse

#endif  // HYPERCOLLAPSE_HARNESS_HPP_
