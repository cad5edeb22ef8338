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

#include <cstdint>
#include <optional>
#include <vector>

#include "mcsched/rng.hpp"

namespace mcsched {

/// Per-hit service rate model for the tagged-packet delay runs.
struct RateModel {
  enum class Mode { Empirical, ExponentialServer };
  Mode mode = Mode::Empirical;
  /// 1 / E[R]; used only by ExponentialServer.
  double mu = 1.0;

  static RateModel empirical() { return {Mode::Empirical, 1.0}; }
  static RateModel exponential_server(double mu) { return {Mode::ExponentialServer, mu}; }
};

/// G * C(N, N/alpha) in exact 64-bit arithmetic; throws Unsupported on overflow.
std::uint64_t queue_universe(unsigned n_users, unsigned groups, unsigned alpha);

/// Residual service of one packet held in alpha coupled queues.
struct TaggedPacketState {
  std::vector<double> residual;  // nats still owed by each coupled queue
  std::uint64_t slots_elapsed = 0;
  std::uint64_t queue_universe = 1;

  bool done() const;
};

struct StaticDelayParams {
  unsigned n_users = 1;
  unsigned groups = 1;
  unsigned alpha = 1;
  unsigned antennas = 1;
  double power = 1.0;
  double packet_nats = 1.0;  // S
  double coherence = 1.0;    // Tc in slot units
  RateModel model = RateModel::empirical();
};

/// Head-of-line delay (slots) of a packet stored in alpha coupled queues.
/// Each slot the server serves one of Q = G C(N, N/alpha) queues uniformly at
/// random; a hit on coupled queue i removes Tc * R nats from it, with R drawn
/// from the rate model. A rate is drawn on every hit so that paired runs on
/// one stream stay monotone in P and S.
std::uint64_t tagged_delay_static(const StaticDelayParams& params, Rng& rng);

/// Attempts tau until every one of N users has accumulated more than R-bar
/// nats of mutual information, or the attempt cap M is reached.
std::uint64_t tagged_delay_ir(unsigned n_users, double power, double rate_target,
                              std::optional<std::uint64_t> attempt_cap, Rng& rng,
                              unsigned antennas = 1);

/// Outcome of one IR codeword, for the renewal-reward estimator.
struct IrCycle {
  std::uint64_t attempts = 0;
  bool success = false;
};
IrCycle run_ir_cycle(unsigned n_users, double power, double rate_target,
                     std::optional<std::uint64_t> attempt_cap, Rng& rng, unsigned antennas = 1);

struct CoopDelayParams {
  unsigned n_users = 2;
  unsigned groups = 1;
  unsigned antennas = 1;
  double power = 1.0;
  double packet_nats = 1.0;
  double coherence = 1.0;
};

/// Slots until S nats reach all N users of the tagged group. The tagged group
/// is served with probability 1/G per slot; a served slot delivers Tc times
/// the selected group's effective cooperative rate.
std::uint64_t tagged_delay_coop(const CoopDelayParams& params, Rng& rng);

/// Uniform draws among Q queues until each of alpha designated queues has
/// been drawn `services` times (one unit of service per draw).
std::uint64_t simulate_coupon_trials(std::uint64_t queues, unsigned alpha, unsigned services,
                                     Rng& rng);

}  // namespace mcsched
