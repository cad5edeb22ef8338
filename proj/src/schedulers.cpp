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

#include "mcsched/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mcsched/error.hpp"

namespace mcsched {

namespace {

void check_alpha(std::size_t n, std::size_t alpha) {
  require(n >= 1, "scheduler: need at least one user");
  require(alpha >= 1 && alpha <= n && n % alpha == 0,
          "scheduler: alpha=" + std::to_string(alpha) + " does not divide N=" + std::to_string(n));
}

void check_gains(std::span<const double> gains) {
  for (double g : gains) require(g >= 0.0, "scheduler: gains must be nonnegative");
}

// Indices sorted strongest first; equal gains rank the lower index first.
std::vector<std::size_t> strongest_first(std::span<const double> gains) {
  std::vector<std::size_t> idx(gains.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });
  return idx;
}

}  // namespace

double order_statistic_gain(std::span<const double> gains, std::size_t position,
                            std::vector<double>& scratch) {
  scratch.assign(gains.begin(), gains.end());
  auto nth = scratch.begin() + static_cast<std::ptrdiff_t>(position - 1);
  std::nth_element(scratch.begin(), nth, scratch.end());
  return *nth;
}

SchedulerDecision static_schedule(std::span<const double> gains, std::size_t alpha, double power) {
  const std::size_t n = gains.size();
  check_alpha(n, alpha);
  check_gains(gains);
  require(power > 0.0, "scheduler: P must be positive");
  const std::size_t served = n / alpha;
  const auto order = strongest_first(gains);

  SchedulerDecision d;
  d.target_position = n - served + 1;
  d.decodable_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(served));
  std::sort(d.decodable_set.begin(), d.decodable_set.end());
  d.rate = std::log1p(gains[order[served - 1]] * power);
  return d;
}

SchedulerDecision multigroup_static_schedule(std::span<const std::vector<double>> all_gains,
                                             std::size_t alpha, double power) {
  require(!all_gains.empty(), "scheduler: need at least one group");
  std::vector<double> scratch;
  std::size_t best = 0;
  double best_gain = -1.0;
  const std::size_t n = all_gains.front().size();
  check_alpha(n, alpha);
  for (std::size_t g = 0; g < all_gains.size(); ++g) {
    require(all_gains[g].size() == n, "scheduler: every group must have N users");
    check_gains(all_gains[g]);
    const double v = order_statistic_gain(all_gains[g], n - n / alpha + 1, scratch);
    if (v > best_gain) {
      best_gain = v;
      best = g;
    }
  }
  SchedulerDecision d = static_schedule(all_gains[best], alpha, power);
  d.group = best;
  return d;
}

IrState IrState::fresh(std::size_t n_users, double rate_target,
                       std::optional<std::size_t> attempt_cap) {
  require(n_users >= 1, "IR: need at least one user");
  require(rate_target > 0.0, "IR: rate target must be positive");
  require(!attempt_cap || *attempt_cap >= 1, "IR: attempt cap must be >= 1");
  IrState s;
  s.accumulated_mi.assign(n_users, 0.0);
  s.rate_target = rate_target;
  s.attempt_cap = attempt_cap;
  return s;
}

IrVerdict ir_advance_inplace(IrState& state, std::span<const double> gains, double power) {
  if (state.stopped) fail(ErrorCode::InvalidState, "ir_advance: codeword already stopped");
  require(gains.size() == state.accumulated_mi.size(), "ir_advance: gain count must equal N");
  double weakest = INFINITY;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    state.accumulated_mi[i] += std::log1p(gains[i] * power);
    weakest = std::min(weakest, state.accumulated_mi[i]);
  }
  ++state.attempts;
  if (weakest > state.rate_target) {
    state.stopped = true;
    return IrVerdict::Success;
  }
  if (state.attempt_cap && state.attempts >= *state.attempt_cap) {
    state.stopped = true;
    return IrVerdict::CapReached;
  }
  return IrVerdict::Continue;
}

IrStep ir_advance(const IrState& state, std::span<const double> gains, double power) {
  IrStep step{state, IrVerdict::Continue};
  step.verdict = ir_advance_inplace(step.state, gains, power);
  return step;
}

CoopDecision cooperative_schedule(std::span<const double> bs_gains, const GainMatrix& interuser,
                                  double power) {
  const std::size_t n = bs_gains.size();
  require(n >= 2 && n % 2 == 0, "cooperative scheduler: N must be even and >= 2");
  require(interuser.size() == n, "cooperative scheduler: inter-user matrix must be N x N");
  check_gains(bs_gains);
  require(power > 0.0, "scheduler: P must be positive");

  const std::size_t half = n / 2;
  const auto order = strongest_first(bs_gains);
  CoopDecision d;
  d.stage1_rate = std::log1p(bs_gains[order[half - 1]] * power);
  d.first_half_set.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
  std::sort(d.first_half_set.begin(), d.first_half_set.end());

  const double split = power / static_cast<double>(half);
  double worst = INFINITY;
  for (std::size_t r = half; r < n; ++r) {
    const std::size_t j = order[r];
    double sum = 0.0;
    for (std::size_t i : d.first_half_set) sum += interuser(i, j);
    worst = std::min(worst, std::log1p(sum * split));
  }
  d.stage2_rate = worst;
  d.effective_rate = std::min(d.stage1_rate, d.stage2_rate);
  return d;
}

MultigroupCoopDecision multigroup_cooperative_schedule(
    std::span<const std::vector<double>> bs_gains, std::span<const GainMatrix> interuser,
    double power) {
  require(!bs_gains.empty(), "cooperative scheduler: need at least one group");
  require(bs_gains.size() == interuser.size(),
          "cooperative scheduler: one inter-user matrix per group");
  MultigroupCoopDecision best;
  double best_value = -1.0;
  for (std::size_t g = 0; g < bs_gains.size(); ++g) {
    CoopDecision d = cooperative_schedule(bs_gains[g], interuser[g], power);
    const double value = 0.5 * static_cast<double>(bs_gains[g].size()) * d.effective_rate;
    if (value > best_value) {
      best_value = value;
      best.decision = std::move(d);
      best.group = g;
    }
  }
  return best;
}

}  // namespace mcsched
