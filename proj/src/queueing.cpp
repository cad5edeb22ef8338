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

#include "mcsched/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mcsched/analytic.hpp"
#include "mcsched/channel.hpp"
#include "mcsched/error.hpp"
#include "mcsched/schedulers.hpp"

namespace mcsched {

std::uint64_t queue_universe(unsigned n_users, unsigned groups, unsigned alpha) {
  require(groups >= 1, "queue_universe: G must be >= 1");
  require(alpha >= 1 && alpha <= n_users && n_users % alpha == 0,
          "queue_universe: alpha=" + std::to_string(alpha) + " does not divide N=" +
              std::to_string(n_users));
  const std::uint64_t per_group = binomial(n_users, n_users / alpha);
  if (per_group > std::numeric_limits<std::uint64_t>::max() / groups)
    fail(ErrorCode::Unsupported, "queue_universe: G C(N, N/alpha) exceeds 64 bits");
  return per_group * groups;
}

bool TaggedPacketState::done() const {
  return std::all_of(residual.begin(), residual.end(), [](double r) { return r <= 0.0; });
}

namespace {

// Rate of the best group's target user for one fresh fading draw.
class StaticRateSampler {
 public:
  explicit StaticRateSampler(const StaticDelayParams& p)
      : p_(p), gains_(p.n_users), position_(p.n_users - p.n_users / p.alpha + 1) {}

  double operator()(Rng& rng) {
    if (p_.model.mode == RateModel::Mode::ExponentialServer) {
      std::exponential_distribution<double> rate(p_.model.mu);
      return rate(rng);
    }
    double best = 0.0;
    for (unsigned g = 0; g < p_.groups; ++g) {
      fill_chisquare_gains(gains_, p_.antennas, rng);
      best = std::max(best, order_statistic_gain(gains_, position_, scratch_));
    }
    return std::log1p(best * p_.power);
  }

 private:
  const StaticDelayParams& p_;
  std::vector<double> gains_;
  std::vector<double> scratch_;
  std::size_t position_;
};

}  // namespace

std::uint64_t tagged_delay_static(const StaticDelayParams& p, Rng& rng) {
  require(p.packet_nats > 0.0 && p.coherence > 0.0 && p.power > 0.0,
          "tagged_delay_static: S, Tc and P must be positive");
  require(p.antennas >= 1, "tagged_delay_static: L must be >= 1");
  if (p.model.mode == RateModel::Mode::ExponentialServer)
    require(p.model.mu > 0.0, "tagged_delay_static: exponential-server mu must be positive");

  TaggedPacketState st;
  st.queue_universe = queue_universe(p.n_users, p.groups, p.alpha);
  st.residual.assign(p.alpha, p.packet_nats);
  const double hit = static_cast<double>(p.alpha) / static_cast<double>(st.queue_universe);

  StaticRateSampler sample_rate(p);
  std::uniform_int_distribution<unsigned> which(0, p.alpha - 1);
  unsigned remaining = p.alpha;
  while (remaining > 0) {
    st.slots_elapsed += draw_geometric_failures(hit, rng) + 1;
    const unsigned q = (p.alpha == 1) ? 0u : which(rng);
    const double delivered = p.coherence * sample_rate(rng);
    double& r = st.residual[q];
    if (r > 0.0) {
      r -= delivered;
      if (r <= 0.0) --remaining;
    }
  }
  return st.slots_elapsed;
}

IrCycle run_ir_cycle(unsigned n_users, double power, double rate_target,
                     std::optional<std::uint64_t> attempt_cap, Rng& rng, unsigned antennas) {
  require(power > 0.0, "IR: P must be positive");
  IrState st = IrState::fresh(n_users, rate_target,
                              attempt_cap ? std::optional<std::size_t>(*attempt_cap) : std::nullopt);
  std::vector<double> gains(n_users);
  for (;;) {
    fill_chisquare_gains(gains, antennas, rng);
    const IrVerdict v = ir_advance_inplace(st, gains, power);
    if (v != IrVerdict::Continue) return {st.attempts, v == IrVerdict::Success};
  }
}

std::uint64_t tagged_delay_ir(unsigned n_users, double power, double rate_target,
                              std::optional<std::uint64_t> attempt_cap, Rng& rng,
                              unsigned antennas) {
  return run_ir_cycle(n_users, power, rate_target, attempt_cap, rng, antennas).attempts;
}

std::uint64_t tagged_delay_coop(const CoopDelayParams& p, Rng& rng) {
  require(p.n_users >= 2 && p.n_users % 2 == 0, "tagged_delay_coop: N must be even and >= 2");
  require(p.groups >= 1, "tagged_delay_coop: G must be >= 1");
  require(p.packet_nats > 0.0 && p.coherence > 0.0 && p.power > 0.0,
          "tagged_delay_coop: S, Tc and P must be positive");

  std::vector<std::vector<double>> bs(p.groups, std::vector<double>(p.n_users));
  std::vector<GainMatrix> inter(p.groups, GainMatrix(p.n_users));
  const double select = 1.0 / static_cast<double>(p.groups);
  double residual = p.packet_nats;
  std::uint64_t slots = 0;
  while (residual > 0.0) {
    slots += (p.groups == 1 ? 0 : draw_geometric_failures(select, rng)) + 1;
    for (unsigned g = 0; g < p.groups; ++g) {
      fill_chisquare_gains(bs[g], p.antennas, rng);
      fill_interuser_gains(inter[g], rng);
    }
    const auto d = multigroup_cooperative_schedule(bs, inter, p.power);
    residual -= p.coherence * d.decision.effective_rate;
  }
  return slots;
}

std::uint64_t simulate_coupon_trials(std::uint64_t queues, unsigned alpha, unsigned services,
                                     Rng& rng) {
  require(alpha >= 1 && services >= 1, "coupon trials: alpha and m must be >= 1");
  require(queues >= alpha, "coupon trials: alpha must not exceed Q");
  std::vector<unsigned> need(alpha, services);
  std::uniform_int_distribution<unsigned> which(0, alpha - 1);
  const double hit = static_cast<double>(alpha) / static_cast<double>(queues);
  std::uint64_t trials = 0;
  std::uint64_t outstanding = static_cast<std::uint64_t>(alpha) * services;
  while (outstanding > 0) {
    trials += draw_geometric_failures(hit, rng) + 1;
    unsigned& n = need[alpha == 1 ? 0u : which(rng)];
    if (n > 0) {
      --n;
      --outstanding;
    }
  }
  return trials;
}

}  // namespace mcsched
