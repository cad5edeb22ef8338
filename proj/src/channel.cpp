/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The mcsched authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mcsched/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcsched/error.hpp"

namespace mcsched {

std::vector<double> draw_rayleigh_gains(std::size_t n, Rng& rng) {
  require(n >= 1, "draw_rayleigh_gains: n must be >= 1");
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> out(n);
  for (auto& g : out) g = exp1(rng);
  return out;
}

void fill_chisquare_gains(std::vector<double>& out, unsigned antennas, Rng& rng) {
  require(antennas >= 1, "chi-square gains: antenna count must be >= 1");
  std::exponential_distribution<double> exp1(1.0);
  if (antennas == 1) {
    for (auto& g : out) g = exp1(rng);
    return;
  }
  const double inv = 1.0 / antennas;
  for (auto& g : out) {
    double s = 0.0;
    for (unsigned l = 0; l < antennas; ++l) s += exp1(rng);
    g = s * inv;
  }
}

std::vector<double> draw_chisquare_gains(std::size_t n, unsigned antennas, Rng& rng) {
  require(n >= 1, "draw_chisquare_gains: n must be >= 1");
  std::vector<double> out(n);
  fill_chisquare_gains(out, antennas, rng);
  return out;
}

void fill_interuser_gains(GainMatrix& out, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  const std::size_t n = out.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) out(k, i) = (k == i) ? 0.0 : exp1(rng);
}

GainMatrix draw_interuser_gains(std::size_t n, Rng& rng) {
  require(n >= 2, "draw_interuser_gains: n must be >= 2");
  GainMatrix m(n);
  fill_interuser_gains(m, rng);
  return m;
}

double coherence_interval(const CoherencePolicy& policy, std::size_t n_users,
                          std::size_t groups) {
  require(n_users >= 1 && groups >= 1, "coherence_interval: N and G must be >= 1");
  require(policy.value > 0.0 && std::isfinite(policy.value),
          "coherence_interval: Tc / c must be positive");
  if (policy.mode == CoherencePolicy::Mode::Fixed) return policy.value;
  const double ng = std::max(static_cast<double>(n_users) * static_cast<double>(groups), 16.0);
  return policy.value / std::log(std::log(ng));
}

}  // namespace mcsched
