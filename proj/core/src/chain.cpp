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

#include "hypercollapse/chain.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hypercollapse {

double lambda2(const BetaSeries& series, std::int64_t N, std::int64_t n) {
  if (N < 2 || n < 0 || n > N - 2) {
    throw std::invalid_argument("lambda2: need 0 <= n <= N-2 (n=" + std::to_string(n) +
                                ", N=" + std::to_string(N) + ")");
  }
  const auto& c = series.coeffs();
  if (c.size() < 3) return 0.0;
  const auto max_i = std::min<std::int64_t>(n, static_cast<std::int64_t>(c.size()) - 3);
  const double Nd = static_cast<double>(N);
  // ratio = n(n-1)...(n-i+1) / (N(N-1)...(N-i-1))
  double ratio = 1.0 / (Nd * (Nd - 1.0));
  double sum = 0.0;
  for (std::int64_t i = 0; i <= max_i; ++i) {
    if (i > 0) {
      ratio *= static_cast<double>(n - i + 1) / static_cast<double>(N - i - 1);
    }
    const double term = static_cast<double>((i + 1) * (i + 2)) * c[i + 2] * ratio;
    sum += term;
    // Terms decay roughly like (n/N)^i once the support is long.
    if (i > 32 && term < 1e-18 * sum) break;
  }
  return Nd * sum;
}

ChainStep step(const ChainState& s, const BetaSeries& series, Rng& rng) {
  if (s.Y < 1) throw std::logic_error("chain step from an absorbed state (Y = 0)");
  if (s.n > s.N - 1) throw std::logic_error("chain step past n = N-1");
  ChainStep out;
  out.W = binomial(rng, s.Y - 1, 1.0 / static_cast<double>(s.N - s.n));
  const std::int64_t remaining_after = s.N - s.n - 1;
  if (remaining_after > 0) {
    out.U = poisson(rng, static_cast<double>(remaining_after) * lambda2(series, s.N, s.n));
  }
  out.next = {s.N, s.n + 1, s.Y - 1 - out.W + out.U, s.Z + 1 + out.W};
  return out;
}

ChainRun run(const BetaSeries& series, std::int64_t N, Rng& rng, const ChainOptions& options) {
  if (N < 1) throw std::invalid_argument("chain run: need N >= 1");
  const double Nd = static_cast<double>(N);
  ChainState s{N, 0, 0, 0};
  s.Y = poisson(rng, Nd * series.coeff(1));
  s.Z = poisson(rng, Nd * series.coeff(0));

  ChainRun result;
  if (options.record_trajectory) result.trajectory.push_back(s);
  while (s.Y > 0 && s.n < N) {
    s = step(s, series, rng).next;
    if (options.record_trajectory) result.trajectory.push_back(s);
  }
  result.terminal = s;
  result.v_star_count = s.n;
  result.lambda_star_count = s.Z;
  return result;
}

void write_trajectory_csv(std::ostream& out, const std::vector<ChainState>& trajectory) {
  out << "n,Y,Z\n";
  for (const auto& s : trajectory) out << s.n << ',' << s.Y << ',' << s.Z << '\n';
}

}  // namespace hypercollapse
