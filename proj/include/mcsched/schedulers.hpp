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

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "mcsched/channel.hpp"

namespace mcsched {

/// Outcome of one static-scheduler slot.
struct SchedulerDecision {
  std::size_t group = 0;
  /// 1-based position (ascending gain order) of the user that sets the rate.
  std::size_t target_position = 1;
  /// User indices (ascending) whose gain is at least the target's.
  std::vector<std::size_t> decodable_set;
  /// Nats per channel use.
  double rate = 0.0;
};

/// Rate is set by the user at position N - N/alpha + 1, so the N/alpha
/// strongest users decode. Ties rank the lower user index as stronger.
SchedulerDecision static_schedule(std::span<const double> gains, std::size_t alpha, double power);

/// Applies the static rule inside each group and serves the group whose
/// order-statistic gain is largest (lowest index on ties).
SchedulerDecision multigroup_static_schedule(std::span<const std::vector<double>> all_gains,
                                             std::size_t alpha, double power);

/// Gain at 1-based ascending `position`, without building a decision.
double order_statistic_gain(std::span<const double> gains, std::size_t position,
                            std::vector<double>& scratch);

enum class IrVerdict { Continue, Success, CapReached };

/// Incremental-redundancy accumulator for one codeword.
struct IrState {
  std::vector<double> accumulated_mi;  // nats per channel use, per user
  std::size_t attempts = 0;
  double rate_target = 0.0;  // R-bar
  std::optional<std::size_t> attempt_cap;  // M; nullopt = unbounded
  bool stopped = false;

  static IrState fresh(std::size_t n_users, double rate_target,
                       std::optional<std::size_t> attempt_cap = std::nullopt);
};

struct IrStep {
  IrState state;
  IrVerdict verdict = IrVerdict::Continue;
};

/// One more attempt: every user adds log(1 + g_i P). Success once the
/// weakest accumulation exceeds R-bar; CapReached when attempts hits M first.
IrStep ir_advance(const IrState& state, std::span<const double> gains, double power);

/// In-place form for simulation loops; same semantics as ir_advance.
IrVerdict ir_advance_inplace(IrState& state, std::span<const double> gains, double power);

/// Two-stage cooperative decision.
struct CoopDecision {
  double stage1_rate = 0.0;  // base station to the top half
  double stage2_rate = 0.0;  // top half jointly to the bottom half
  double effective_rate = 0.0;  // min of the two
  std::vector<std::size_t> first_half_set;  // ascending indices
};

/// Stage 1 serves the N/2 strongest users at the median-position rate; in
/// stage 2 those users split power P equally and relay to the rest at the
/// worst remaining user's rate.
CoopDecision cooperative_schedule(std::span<const double> bs_gains, const GainMatrix& interuser,
                                  double power);

struct MultigroupCoopDecision {
  CoopDecision decision;
  std::size_t group = 0;
};

/// Serves argmax_g (N/2) min{Rs1^g, Rs2^g} (lowest index on ties).
MultigroupCoopDecision multigroup_cooperative_schedule(
    std::span<const std::vector<double>> bs_gains, std::span<const GainMatrix> interuser,
    double power);

}  // namespace mcsched
