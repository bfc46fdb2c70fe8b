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

#ifndef HYPERCOLLAPSE_FLUID_HPP_
#define HYPERCOLLAPSE_FLUID_HPP_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "hypercollapse/beta.hpp"
#include "hypercollapse/random.hpp"

namespace hypercollapse::fluid {

// (fraction of vertices removed, patch density, debris density)
using State = std::array<double, 3>;

// Mean jump of the rescaled (n, Y, Z) process:
//   (1, -1 - x2/(1-x1) + (1-x1) beta''(x1), 1 + x2/(1-x1)).
// The debris count grows by 1 + W per step, hence the leading 1 in the last
// component.
// Throws std::domain_error unless 0 <= x1 < 1.
State drift(const BetaSeries& series, const State& x);

// Closed-form solution of x' = drift(x) from (0, beta_1, beta_0):
//   (t, (1-t) f(t), beta(t) - (1-t) log(1-t)).
// Defined for t in [0, 1); meaningful as a limit only up to z*.
State state_at(const BetaSeries& series, double t);

struct PathPoint {
  double t = 0.0;
  State x{};
  double sigma_sq = 0.0;
};

struct Path {
  std::vector<PathPoint> points;
  // max over the grid of |central-difference derivative - drift|, infinity
  // norm; interior points only.
  double max_residual = 0.0;
};

// Evaluates the closed form on `grid`, which must lie in [0, min(z*, 1)) up
// to the z* endpoint itself (pass the threshold report). Throws
// std::domain_error for points >= 1 or beyond z*.
Path path(const BetaSeries& series, std::span<const double> grid, const ThresholdReport& report);

// n equispaced points on [0, min(z*, upper)].
std::vector<double> default_grid(const ThresholdReport& report, std::size_t n,
                                 double upper = 1.0 - 1e-6);

struct Limits {
  double v_limit = 0.0;     // z*
  double edge_limit = 0.0;  // beta(z*) - (1-z*) log(1-z*), or beta(1) when z* = 1
};

Limits limits(const BetaSeries& series, const ThresholdReport& report);
Limits limits(const BetaSeries& series);

// Limiting terminal vertex fraction as a function of z: beta(z) - (1-z)log(1-z).
double edge_fraction_at(const BetaSeries& series, double z);

struct ZLawSample {
  double value = 0.0;
  std::optional<std::size_t> hit_zero_index;  // which tangency stopped the path
};

// Z = min{z in zeros : W(z/(1-z)) < 0} ^ z*, with W a standard Brownian
// motion sampled exactly at the clock times. Throws std::domain_error when
// a tangency sits at t = 0.
ZLawSample sample_Z(const ThresholdReport& report, Rng& rng);

enum class FluctuationMethod {
  kExactTimeChange,  // alpha_t = W(sigma_t^2), Gaussian increments in the clock
  kEulerMaruyama,    // scalar SDE for alpha_t
  kFull,             // (gamma*^2, gamma*^3) pair with the drift Jacobian
};

struct FluctuationOptions {
  FluctuationMethod method = FluctuationMethod::kExactTimeChange;
  double step = 1e-4;
};

struct FluctuationPath {
  std::vector<double> alpha;  // one per grid point
  // Filled for kFull: (gamma*^2, gamma*^3) per grid point.
  std::vector<std::array<double, 2>> gamma;
};

// Samples the reduced fluctuation alpha_t = gamma*^2_t / (1-t) of the patch
// density, started from alpha_0 ~ Normal(0, beta_1).
class FluctuationSampler {
 public:
  // Throws std::domain_error unless the grid is nondecreasing inside [0, z*).
  FluctuationSampler(BetaSeries series, std::vector<double> grid,
                     FluctuationOptions options = {});

  FluctuationPath sample(Rng& rng) const;
  const std::vector<double>& grid() const { return grid_; }
  double z_star() const { return z_star_; }

 private:
  FluctuationPath sample_exact(Rng& rng) const;
  FluctuationPath sample_euler(Rng& rng) const;
  FluctuationPath sample_full(Rng& rng) const;

  BetaSeries series_;
  std::vector<double> grid_;
  FluctuationOptions options_;
  double z_star_ = 1.0;
};

// CSV columns t,x1,x2,x3,sigma_sq.
void write_path_csv(std::ostream& out, const Path& path);

}  // namespace hypercollapse::fluid

#endif  // HYPERCOLLAPSE_FLUID_HPP_
