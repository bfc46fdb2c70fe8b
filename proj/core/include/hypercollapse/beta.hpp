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

#ifndef HYPERCOLLAPSE_BETA_HPP_
#define HYPERCOLLAPSE_BETA_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypercollapse {

// Edge-size generating series beta(t) = sum_j beta_j t^j with finite support.
// Coefficient j is the expected number of j-edges per vertex.
class BetaSeries {
 public:
  BetaSeries() = default;
  // Throws std::invalid_argument on negative or non-finite coefficients.
  explicit BetaSeries(std::vector<double> coeffs);

  const std::vector<double>& coeffs() const { return coeffs_; }
  // Largest j with beta_j > 0, or 0 for the zero series.
  std::size_t degree() const;
  double coeff(std::size_t j) const {
    return j < coeffs_.size() ? coeffs_[j] : 0.0;
  }

  // True when no coefficient of index >= 1 is positive: every edge is debris
  // and no vertex can ever be identified.
  bool pure_debris() const;

  // Returns a copy with beta_j multiplied by `factor` for every j >= 1.
  BetaSeries scaled_nonconstant(double factor) const;

  // JSON array literal "[b0, b1, ...]".
  static BetaSeries parse_json(std::string_view text);
  std::string to_json() const;

  friend bool operator==(const BetaSeries&, const BetaSeries&) = default;

 private:
  std::vector<double> coeffs_;
};

// Example with beta_1 = -log(1-p) and beta_2 = alpha/2 (random graph with
// distinguished vertices).
BetaSeries example21(double p, double alpha);
// beta(t) = alpha (0.1 + 0.9 t)^7.
BetaSeries example22(double alpha);

// beta^(order)(t) for order 0, 1 or 2, by Horner recurrence.
double eval(const BetaSeries& series, double t, int order = 0);

// f(t) = beta'(t) + log(1 - t). Requires t in [0, 1).
double threshold(const BetaSeries& series, double t);

// Variance clock of the reduced patch-density fluctuation:
// (beta'(t) + log(1-t) + t) / (1-t). Equals beta_1 at t = 0.
double sigma_sq(const BetaSeries& series, double t);

struct TangentialZero {
  double t = 0.0;
  double f_value = 0.0;    // f at the refined minimum
  double curvature = 0.0;  // f'' estimate at t
  bool degenerate = false; // zero at t = 0 (beta_1 == 0)
};

struct AnalyzeOptions {
  double scan_step = 1e-4;
  double root_tolerance = 1e-12;
  double tangency_tolerance = 1e-9;
  // The scan stops here; no sign change before it means z* = 1.
  double upper_limit = 1.0 - 1e-6;
  // When > 0, f is sampled on this many equispaced points of [0, z*].
  std::size_t f_sample_count = 0;
};

struct ThresholdReport {
  double z_star = 1.0;
  std::vector<TangentialZero> zeros;  // the tangency set, increasing, < z*
  double tangency_tolerance = 1e-9;
  double root_tolerance = 1e-12;
  bool degenerate = false;  // beta_1 == 0
  std::vector<std::pair<double, double>> f_samples;

  bool critical() const { return !zeros.empty(); }
  std::vector<double> zero_locations() const;
};

// Locates z* = inf{t in [0,1): f(t) < 0} ^ 1 and the interior tangential
// zeros of f on [0, z*) by a uniform scan, bisection on sign changes and
// ternary refinement of local minima.
ThresholdReport analyze(const BetaSeries& series, const AnalyzeOptions& options = {});

struct TruncatedSeries {
  BetaSeries series;
  double tail_mass = 0.0;  // sum_{j > M} beta_j (numerically summed)
};

// Keeps coefficients with index <= max_index of a coefficient rule j -> beta_j.
// The tail is summed until terms become negligible or `tail_terms` is reached.
TruncatedSeries truncate(const std::function<double(std::size_t)>& rule,
                         std::size_t max_index, std::size_t tail_terms = 1'000'000);
TruncatedSeries truncate(const BetaSeries& series, std::size_t max_index);

}  // namespace hypercollapse

#endif  // HYPERCOLLAPSE_BETA_HPP_
