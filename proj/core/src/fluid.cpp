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

#include "hypercollapse/fluid.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hypercollapse::fluid {

State drift(const BetaSeries& series, const State& x) {
  if (!(x[0] >= 0.0 && x[0] < 1.0)) throw std::domain_error("drift: need 0 <= x1 < 1");
  const double rest = 1.0 - x[0];
  return {1.0, -1.0 - x[1] / rest + rest * eval(series, x[0], 2), 1.0 + x[1] / rest};
}

State state_at(const BetaSeries& series, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("fluid state: need 0 <= t < 1");
  const double log_rest = std::log1p(-t);
  return {t, (1.0 - t) * threshold(series, t), eval(series, t, 0) - (1.0 - t) * log_rest};
}

namespace {

double residual_at(const BetaSeries& series, double t) {
  const double h = 1e-6;
  const double lo = std::max(0.0, t - h);
  const double hi = std::min(t + h, 1.0 - 1e-9);
  const State a = state_at(series, lo);
  const State b = state_at(series, hi);
  const State d = drift(series, state_at(series, t));
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double fd = (b[i] - a[i]) / (hi - lo);
    worst = std::max(worst, std::abs(fd - d[i]) / std::max(1.0, std::abs(d[i])));
  }
  return worst;
}

}  // namespace

Path path(const BetaSeries& series, std::span<const double> grid, const ThresholdReport& report) {
  const double limit = report.z_star + std::max(report.root_tolerance, 1e-12);
  Path out;
  out.points.reserve(grid.size());
  for (double t : grid) {
    if (!(t >= 0.0 && t < 1.0)) {
      throw std::domain_error("fluid path: grid point " + std::to_string(t) + " outside [0, 1)");
    }
    if (t > limit) {
      throw std::domain_error("fluid path: grid point " + std::to_string(t) + " beyond z* = " +
                              std::to_string(report.z_star));
    }
    out.points.push_back({t, state_at(series, t), sigma_sq(series, t)});
    out.max_residual = std::max(out.max_residual, residual_at(series, t));
  }
  return out;
}

std::vector<double> default_grid(const ThresholdReport& report, std::size_t n, double upper) {
  const double top = std::min(report.z_star, upper);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = n == 1 ? 0.0 : top * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

double edge_fraction_at(const BetaSeries& series, double z) {
  if (z >= 1.0) return eval(series, 1.0, 0);
  return eval(series, z, 0) - (1.0 - z) * std::log1p(-z);
}

Limits limits(const BetaSeries& series, const ThresholdReport& report) {
  return {report.z_star, edge_fraction_at(series, report.z_star)};
}

Limits limits(const BetaSeries& series) { return limits(series, analyze(series)); }

ZLawSample sample_Z(const ThresholdReport& report, Rng& rng) {
  double clock = 0.0;
  double w = 0.0;
  for (std::size_t i = 0; i < report.zeros.size(); ++i) {
    const double z = report.zeros[i].t;
    if (z <= 0.0 || report.zeros[i].degenerate) {
      throw std::domain_error("sample_Z: tangency at t = 0 has W(0) = 0; law undefined");
    }
    const double s = z / (1.0 - z);
    w += std::sqrt(s - clock) * standard_normal(rng);
    clock = s;
    if (w < 0.0) return {z, i};
  }
  return {report.z_star, std::nullopt};
}

FluctuationSampler::FluctuationSampler(BetaSeries series, std::vector<double> grid,
                                       FluctuationOptions options)
    : series_(std::move(series)), grid_(std::move(grid)), options_(options) {
  z_star_ = analyze(series_).z_star;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!(grid_[i] >= 0.0 && grid_[i] < z_star_)) {
      throw std::domain_error("fluctuation grid must lie in [0, z*)");
    }
    if (i > 0 && grid_[i] < grid_[i - 1]) {
      throw std::domain_error("fluctuation grid must be nondecreasing");
    }
  }
  if (!(options_.step > 0.0)) throw std::invalid_argument("fluctuation step must be positive");
}

FluctuationPath FluctuationSampler::sample(Rng& rng) const {
  switch (options_.method) {
    case FluctuationMethod::kExactTimeChange:
      return sample_exact(rng);
    case FluctuationMethod::kEulerMaruyama:
      return sample_euler(rng);
    case FluctuationMethod::kFull:
      return sample_full(rng);
  }
  throw std::logic_error("unknown fluctuation method");
}

FluctuationPath FluctuationSampler::sample_exact(Rng& rng) const {
  FluctuationPath out;
  out.alpha.reserve(grid_.size());
  double clock = series_.coeff(1);
  double alpha = std::sqrt(clock) * standard_normal(rng);
  for (double t : grid_) {
    const double s = sigma_sq(series_, t);
    if (s > clock) {
      alpha += std::sqrt(s - clock) * standard_normal(rng);
      clock = s;
    }
    out.alpha.push_back(alpha);
  }
  return out;
}

namespace {

// Instantaneous variance rate of alpha_t: f/(1-t)^2 + beta''/(1-t), with f
// clipped at zero against roundoff at tangencies.
double alpha_rate(const BetaSeries& series, double t) {
  const double rest = 1.0 - t;
  return std::max(0.0, threshold(series, t)) / (rest * rest) + eval(series, t, 2) / rest;
}

}  // namespace

FluctuationPath FluctuationSampler::sample_euler(Rng& rng) const {
  FluctuationPath out;
  out.alpha.reserve(grid_.size());
  double t = 0.0;
  double alpha = std::sqrt(series_.coeff(1)) * standard_normal(rng);
  for (double target : grid_) {
    while (t < target) {
      const double dt = std::min(options_.step, target - t);
      alpha += std::sqrt(alpha_rate(series_, t) * dt) * standard_normal(rng);
      t += dt;
    }
    out.alpha.push_back(alpha);
  }
  return out;
}

FluctuationPath FluctuationSampler::sample_full(Rng& rng) const {
  FluctuationPath out;
  out.alpha.reserve(grid_.size());
  out.gamma.reserve(grid_.size());
  double t = 0.0;
  double g2 = std::sqrt(series_.coeff(1)) * standard_normal(rng);
  double g3 = std::sqrt(series_.coeff(0)) * standard_normal(rng);
  for (double target : grid_) {
    while (t < target) {
      const double dt = std::min(options_.step, target - t);
      const double rest = 1.0 - t;
      const double v1 = std::sqrt(std::max(0.0, threshold(series_, t)));  // sqrt(x2/(1-x1))
      const double v2 = std::sqrt(rest * eval(series_, t, 2));
      const double sdt = std::sqrt(dt);
      const double db1 = sdt * standard_normal(rng);
      const double db2 = sdt * standard_normal(rng);
      const double g2_old = g2;
      g2 += v1 * db1 + v2 * db2 - g2_old / rest * dt;
      g3 += -v1 * db1 + g2_old / rest * dt;
      t += dt;
    }
    out.gamma.push_back({g2, g3});
    out.alpha.push_back(g2 / (1.0 - target));
  }
  return out;
}

void write_path_csv(std::ostream& out, const Path& path) {
  const auto old_precision = out.precision(17);
  out << "t,x1,x2,x3,sigma_sq\n";
  for (const auto& p : path.points) {
    out << p.t << ',' << p.x[0] << ',' << p.x[1] << ',' << p.x[2] << ',' << p.sigma_sq << '\n';
  }
  out.precision(old_precision);
}

}  // namespace hypercollapse::fluid
