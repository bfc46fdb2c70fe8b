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

#include "hypercollapse/beta.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace hypercollapse {

BetaSeries::BetaSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (!std::isfinite(coeffs_[j]) || coeffs_[j] < 0.0) {
      throw std::invalid_argument("beta coefficient " + std::to_string(j) +
                                  " must be finite and nonnegative");
    }
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

std::size_t BetaSeries::degree() const {
  return coeffs_.empty() ? 0 : coeffs_.size() - 1;
}

bool BetaSeries::pure_debris() const { return coeffs_.size() <= 1; }

BetaSeries BetaSeries::scaled_nonconstant(double factor) const {
  std::vector<double> c = coeffs_;
  for (std::size_t j = 1; j < c.size(); ++j) c[j] *= factor;
  return BetaSeries(std::move(c));
}

BetaSeries BetaSeries::parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("beta literal is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw std::invalid_argument("beta literal must be a JSON array");
  std::vector<double> coeffs;
  coeffs.reserve(doc.size());
  for (const auto& v : doc) {
    if (!v.is_number()) throw std::invalid_argument("beta literal entries must be numbers");
    coeffs.push_back(v.get<double>());
  }
  return BetaSeries(std::move(coeffs));
}

std::string BetaSeries::to_json() const { return nlohmann::json(coeffs_).dump(); }

BetaSeries example21(double p, double alpha) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("example21: p must lie in [0, 1)");
  if (!(alpha >= 0.0)) throw std::invalid_argument("example21: alpha must be nonnegative");
  return BetaSeries({0.0, -std::log1p(-p), alpha / 2.0});
}

BetaSeries example22(double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("example22: alpha must be nonnegative");
  std::vector<double> c(8);
  double binom = 1.0;
  for (int j = 0; j <= 7; ++j) {
    c[j] = alpha * binom * std::pow(0.1, 7 - j) * std::pow(0.9, j);
    binom = binom * (7 - j) / (j + 1);
  }
  return BetaSeries(std::move(c));
}

double eval(const BetaSeries& series, double t, int order) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval: t must lie in [0, 1]");
  if (order < 0 || order > 2) throw std::invalid_argument("eval: order must be 0, 1 or 2");
  const auto& c = series.coeffs();
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  double acc = 0.0;
  for (std::ptrdiff_t j = n - 1; j >= order; --j) {
    double falling = 1.0;
    for (int k = 0; k < order; ++k) falling *= static_cast<double>(j - k);
    acc = acc * t + falling * c[j];
  }
  return acc;
}

double threshold(const BetaSeries& series, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("threshold: t must lie in [0, 1)");
  return eval(series, t, 1) + std::log1p(-t);
}

double sigma_sq(const BetaSeries& series, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::domain_error("sigma_sq: t must lie in [0, 1)");
  return (threshold(series, t) + t) / (1.0 - t);
}

std::vector<double> ThresholdReport::zero_locations() const {
  std::vector<double> out;
  out.reserve(zeros.size());
  for (const auto& z : zeros) out.push_back(z.t);
  return out;
}

namespace {

// Smallest point of [lo, hi] where f < 0, given f(lo) >= 0 > f(hi).
double bisect_negative(const BetaSeries& s, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (threshold(s, mid) < 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_minimum(const BetaSeries& s, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = threshold(s, c);
  double fd = threshold(s, d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = threshold(s, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = threshold(s, d);
    }
  }
  return fc <= fd ? c : d;
}

double curvature_at(const BetaSeries& s, double t) {
  const double d = 1e-4;
  const double lo = std::max(0.0, t - d);
  const double hi = std::min(1.0 - 1e-9, t + d);
  const double mid = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  return (threshold(s, hi) - 2.0 * threshold(s, mid) + threshold(s, lo)) / (h * h);
}

}  // namespace

ThresholdReport analyze(const BetaSeries& series, const AnalyzeOptions& opt) {
  if (!(opt.scan_step > 0.0) || !(opt.upper_limit > 0.0 && opt.upper_limit < 1.0)) {
    throw std::invalid_argument("analyze: bad scan options");
  }
  ThresholdReport report;
  report.tangency_tolerance = opt.tangency_tolerance;
  report.root_tolerance = opt.root_tolerance;
  report.degenerate = series.coeff(1) == 0.0;

  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * opt.scan_step;
    if (t >= opt.upper_limit) break;
    grid.push_back(t);
  }
  grid.push_back(opt.upper_limit);
  std::vector<double> f(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) f[k] = threshold(series, grid[k]);

  const double tol = opt.tangency_tolerance;
  report.z_star = 1.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k == 0) {
      if (f[0] > 0.0) continue;
      // f(0) = beta_1 = 0.
      if (grid.size() > 1 && f[1] < 0.0) {
        report.z_star = 0.0;
        break;
      }
      report.zeros.push_back({0.0, f[0], curvature_at(series, 0.0), true});
      continue;
    }
    const bool has_next = k + 1 < grid.size();
    const bool local_min = has_next && f[k] <= f[k - 1] && f[k] <= f[k + 1];
    if (local_min) {
      const double c = golden_minimum(series, grid[k - 1], grid[k + 1]);
      const double fc = threshold(series, c);
      if (fc < -tol) {
        report.z_star = bisect_negative(series, grid[k - 1], c, opt.root_tolerance);
        break;
      }
      if (std::abs(fc) <= tol) {
        if (report.zeros.empty() || c - report.zeros.back().t > opt.scan_step) {
          report.zeros.push_back({c, fc, curvature_at(series, c), false});
        }
        continue;
      }
    }
    if (f[k] < 0.0 && !local_min) {
      report.z_star = bisect_negative(series, grid[k - 1], grid[k], opt.root_tolerance);
      break;
    }
  }

  // A tangency refined into the crossing bracket belongs to [z*, 1).
  std::erase_if(report.zeros,
                [&](const TangentialZero& z) { return z.t >= report.z_star; });

  if (opt.f_sample_count > 0) {
    const double top = std::min(report.z_star, opt.upper_limit);
    const std::size_t m = opt.f_sample_count;
    for (std::size_t i = 0; i < m; ++i) {
      const double t = m == 1 ? 0.0 : top * static_cast<double>(i) / static_cast<double>(m - 1);
      report.f_samples.emplace_back(t, threshold(series, t));
    }
  }
  return report;
}

TruncatedSeries truncate(const std::function<double(std::size_t)>& rule,
                         std::size_t max_index, std::size_t tail_terms) {
  std::vector<double> c(max_index + 1);
  for (std::size_t j = 0; j <= max_index; ++j) c[j] = rule(j);
  TruncatedSeries out{BetaSeries(std::move(c)), 0.0};

  double tail = 0.0;
  std::size_t negligible_run = 0;
  for (std::size_t i = 1; i <= tail_terms; ++i) {
    const double term = rule(max_index + i);
    if (!std::isfinite(term) || term < 0.0) {
      throw std::invalid_argument("truncate: rule produced an invalid coefficient");
    }
    tail += term;
    if (term <= 1e-18 * std::max(tail, 1e-300)) {
      if (++negligible_run >= 64) break;
    } else {
      negligible_run = 0;
    }
  }
  out.tail_mass = tail;
  return out;
}

TruncatedSeries truncate(const BetaSeries& series, std::size_t max_index) {
  const auto& c = series.coeffs();
  std::vector<double> kept(c.begin(), c.begin() + std::min(c.size(), max_index + 1));
  double tail = 0.0;
  for (std::size_t j = max_index + 1; j < c.size(); ++j) tail += c[j];
  return {BetaSeries(std::move(kept)), tail};
}

}  // namespace hypercollapse
