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

#include "mcsched/simcore.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "mcsched/analytic.hpp"
#include "mcsched/channel.hpp"
#include "mcsched/error.hpp"
#include "mcsched/queueing.hpp"
#include "mcsched/rng.hpp"
#include "mcsched/schedulers.hpp"

namespace mcsched {

namespace {

// Neumaier compensated sum.
struct CompensatedSum {
  double sum = 0.0, carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    carry += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  void add(const CompensatedSum& o) {
    add(o.sum);
    add(o.carry);
  }
  double value() const { return sum + carry; }
};

// Streaming co-moments of (x, y); blocks merge with Chan's update, always in
// block order. Means come from the compensated sums, so integer-valued
// samples give exactly rounded means.
struct Moments {
  double n = 0.0;
  double mean_x = 0.0, mean_y = 0.0;
  double m2x = 0.0, m2y = 0.0, cxy = 0.0;
  CompensatedSum sum_x, sum_y;

  void add(double x, double y = 0.0) {
    n += 1.0;
    sum_x.add(x);
    sum_y.add(y);
    const double dx = x - mean_x;
    const double dy = y - mean_y;
    mean_x += dx / n;
    mean_y += dy / n;
    m2x += dx * (x - mean_x);
    m2y += dy * (y - mean_y);
    cxy += dx * (y - mean_y);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    if (n == 0.0) {
      *this = o;
      return;
    }
    const double total = n + o.n;
    const double dx = o.mean_x - mean_x;
    const double dy = o.mean_y - mean_y;
    const double w = n * o.n / total;
    sum_x.add(o.sum_x);
    sum_y.add(o.sum_y);
    m2x += o.m2x + dx * dx * w;
    m2y += o.m2y + dy * dy * w;
    cxy += o.cxy + dx * dy * w;
    mean_x += dx * o.n / total;
    mean_y += dy * o.n / total;
    n = total;
  }

  double avg_x() const { return sum_x.value() / n; }
  double avg_y() const { return sum_y.value() / n; }
  double var_x() const { return n > 1.0 ? m2x / (n - 1.0) : 0.0; }
  double var_y() const { return n > 1.0 ? m2y / (n - 1.0) : 0.0; }
  double cov() const { return n > 1.0 ? cxy / (n - 1.0) : 0.0; }
  double se_x() const { return std::sqrt(var_x() / n); }
};

unsigned worker_count(const RunOptions& o, std::uint64_t blocks) {
  unsigned t = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(t, blocks));
}

// Runs body(rng, count) -> Moments on each block of `iterations` and merges
// the block results in order.
template <class Body>
Moments run_blocks(std::uint64_t iterations, std::uint64_t seed, StreamTag tag,
                   const RunOptions& options, Body body) {
  const std::uint64_t blocks = (iterations + kBlockIterations - 1) / kBlockIterations;
  std::vector<Moments> partial(blocks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      try {
        Rng rng = make_stream(seed, tag, b);
        const std::uint64_t count = std::min(kBlockIterations, iterations - b * kBlockIterations);
        partial[b] = body(rng, count);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(blocks);
      }
    }
  };

  const unsigned workers = worker_count(options, blocks);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  Moments total;
  for (const auto& p : partial) total.merge(p);
  return total;
}

double tc_of(const SimConfig& c) { return coherence_interval(c.coherence, c.n_users, c.groups); }

RateModel rate_model_of(const SimConfig& c, unsigned alpha) {
  switch (c.rate_model.mode) {
    case RateModelSpec::Mode::Empirical:
      return RateModel::empirical();
    case RateModelSpec::Mode::ExponentialDerived:
      return RateModel::exponential_server(
          1.0 / static_mean_rate(c.n_users, alpha, c.power, c.groups, c.antennas));
    case RateModelSpec::Mode::ExponentialFixed:
      return RateModel::exponential_server(c.rate_model.mu);
  }
  return RateModel::empirical();
}

Moments static_slots(const SimConfig& c, Rng& rng, std::uint64_t count) {
  const unsigned alpha = c.alpha.resolve(c.n_users);
  const std::size_t position = c.n_users - c.n_users / alpha + 1;
  const double served = static_cast<double>(c.n_users / alpha);
  std::vector<double> gains(c.n_users), scratch;
  Moments m;
  for (std::uint64_t i = 0; i < count; ++i) {
    double best = 0.0;
    for (unsigned g = 0; g < c.groups; ++g) {
      fill_chisquare_gains(gains, c.antennas, rng);
      best = std::max(best, order_statistic_gain(gains, position, scratch));
    }
    m.add(served * std::log1p(best * c.power));
  }
  return m;
}

Moments coop_slots(const SimConfig& c, Rng& rng, std::uint64_t count) {
  std::vector<std::vector<double>> bs(c.groups, std::vector<double>(c.n_users));
  std::vector<GainMatrix> inter(c.groups, GainMatrix(c.n_users));
  const double half = 0.5 * c.n_users;
  Moments m;
  for (std::uint64_t i = 0; i < count; ++i) {
    for (unsigned g = 0; g < c.groups; ++g) {
      fill_chisquare_gains(bs[g], c.antennas, rng);
      fill_interuser_gains(inter[g], rng);
    }
    m.add(half * multigroup_cooperative_schedule(bs, inter, c.power).decision.effective_rate);
  }
  return m;
}

// x = reward of a codeword, y = its attempt count.
Moments ir_cycles(const SimConfig& c, Rng& rng, std::uint64_t count) {
  const double reward = c.n_users * c.rate_target;
  Moments m;
  for (std::uint64_t i = 0; i < count; ++i) {
    const IrCycle cyc =
        run_ir_cycle(c.n_users, c.power, c.rate_target, c.attempt_cap, rng, c.antennas);
    m.add(cyc.success ? reward : 0.0, static_cast<double>(cyc.attempts));
  }
  return m;
}

std::optional<ScalingScheme> scaling_scheme_of(const SimConfig& c) {
  switch (c.scheme) {
    case SchemeKind::IncrementalRedundancy:
      return ScalingScheme::IncrementalRedundancy;
    case SchemeKind::Cooperative:
      return ScalingScheme::Cooperative;
    case SchemeKind::MultigroupCooperative:
      return ScalingScheme::MultigroupCooperative;
    case SchemeKind::Static:
    case SchemeKind::MultigroupStatic:
      break;
  }
  const bool mg = c.scheme == SchemeKind::MultigroupStatic;
  const unsigned a = c.alpha.resolve(c.n_users);
  if (a == c.n_users) return mg ? ScalingScheme::MultigroupBest : ScalingScheme::Best;
  if (a == 1) return mg ? ScalingScheme::MultigroupWorst : ScalingScheme::Worst;
  if (a == 2) return mg ? ScalingScheme::MultigroupMedian : ScalingScheme::Median;
  return std::nullopt;
}

}  // namespace

MetricsRecord estimate_throughput(const SimConfig& c, const RunOptions& options) {
  validate(c);
  MetricsRecord r;
  r.samples = c.iterations;
  if (c.scheme == SchemeKind::IncrementalRedundancy) {
    const Moments m = run_blocks(c.iterations, c.seed, StreamTag::Throughput, options,
                                 [&](Rng& rng, std::uint64_t k) { return ir_cycles(c, rng, k); });
    const double ratio = m.avg_x() / m.avg_y();
    const double v = m.var_x() - 2.0 * ratio * m.cov() + ratio * ratio * m.var_y();
    r.throughput_mean = ratio;
    r.throughput_se = std::sqrt(std::max(v, 0.0) / m.n) / m.avg_y();
    return r;
  }
  const Moments m =
      run_blocks(c.iterations, c.seed, StreamTag::Throughput, options,
                 [&](Rng& rng, std::uint64_t k) {
                   return is_cooperative(c.scheme) ? coop_slots(c, rng, k) : static_slots(c, rng, k);
                 });
  r.throughput_mean = m.avg_x();
  r.throughput_se = m.se_x();
  return r;
}

MetricsRecord estimate_delay(const SimConfig& c, const RunOptions& options) {
  validate(c);
  MetricsRecord r;
  r.samples = c.iterations;
  std::function<double(Rng&)> one;
  const double tc = tc_of(c);
  switch (c.scheme) {
    case SchemeKind::Static:
    case SchemeKind::MultigroupStatic: {
      StaticDelayParams p;
      p.n_users = c.n_users;
      p.groups = c.groups;
      p.alpha = c.alpha.resolve(c.n_users);
      p.antennas = c.antennas;
      p.power = c.power;
      p.packet_nats = c.packet_nats;
      p.coherence = tc;
      p.model = rate_model_of(c, p.alpha);
      one = [p](Rng& rng) { return static_cast<double>(tagged_delay_static(p, rng)); };
      break;
    }
    case SchemeKind::IncrementalRedundancy:
      one = [&c](Rng& rng) {
        return static_cast<double>(
            tagged_delay_ir(c.n_users, c.power, c.rate_target, c.attempt_cap, rng, c.antennas));
      };
      break;
    case SchemeKind::Cooperative:
    case SchemeKind::MultigroupCooperative: {
      CoopDelayParams p{c.n_users, c.groups, c.antennas, c.power, c.packet_nats, tc};
      one = [p](Rng& rng) { return static_cast<double>(tagged_delay_coop(p, rng)); };
      break;
    }
  }
  const Moments m = run_blocks(c.iterations, c.seed, StreamTag::Delay, options,
                               [&](Rng& rng, std::uint64_t k) {
                                 Moments b;
                                 for (std::uint64_t i = 0; i < k; ++i) b.add(one(rng));
                                 return b;
                               });
  r.delay_mean = m.avg_x();
  r.delay_se = m.se_x();
  return r;
}

std::optional<double> analytic_throughput(const SimConfig& c) {
  if (!is_static(c.scheme)) return std::nullopt;
  const unsigned a = c.alpha.resolve(c.n_users);
  try {
    if (c.antennas == 1) {
      if (c.groups == 1) return static_throughput_closed_form(c.n_users, a, c.power);
      if (a == 1) return multigroup_worst_throughput(c.n_users, c.groups, c.power);
      if (a == c.n_users) return multigroup_best_throughput(c.n_users, c.groups, c.power);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Unsupported) throw;
  }
  return static_throughput_quadrature(c.n_users, a, c.power, c.groups, c.antennas);
}

std::optional<double> predicted_scaling_for(const SimConfig& c) {
  const auto scheme = scaling_scheme_of(c);
  if (!scheme) return std::nullopt;
  try {
    Metric metric = c.metrics == MetricsSelection::Delay ? Metric::Delay : Metric::Throughput;
    if (c.scaling_metric) metric = *c.scaling_metric;
    return predicted_scaling(*scheme, metric, c.n_users, c.groups, c.antennas);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Unsupported || e.code() == ErrorCode::InvalidArgument)
      return std::nullopt;
    throw;
  }
}

MetricsRecord estimate(const SimConfig& c, const RunOptions& options) {
  validate(c);
  MetricsRecord r;
  r.samples = c.iterations;
  if (c.metrics != MetricsSelection::Delay) {
    const MetricsRecord t = estimate_throughput(c, options);
    r.throughput_mean = t.throughput_mean;
    r.throughput_se = t.throughput_se;
  }
  if (c.metrics != MetricsSelection::Throughput) {
    const MetricsRecord d = estimate_delay(c, options);
    r.delay_mean = d.delay_mean;
    r.delay_se = d.delay_se;
  }
  r.analytic_throughput = analytic_throughput(c);
  r.predicted_scaling_value = predicted_scaling_for(c);
  return r;
}

std::vector<ResultRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                 const std::vector<double>& values, const RunOptions& options) {
  require(!values.empty(), "sweep over " + axis_name(axis) + " has no values");
  std::vector<SimConfig> configs;
  configs.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimConfig c = with_axis_value(base, axis, values[i]);
    c.seed = derive_seed(base.seed, i);
    configs.push_back(c);
  }
  std::vector<ResultRow> rows;
  rows.reserve(configs.size());
  for (const auto& c : configs) rows.push_back({c, estimate(c, options)});
  return rows;
}

std::vector<ResultRow> run_experiment(const Experiment& ex, const RunOptions& options) {
  std::vector<ResultRow> rows;
  for (const auto& job : ex.jobs) {
    if (job.sweep) {
      auto part = run_sweep(job.config, job.sweep->axis, job.sweep->values, options);
      rows.insert(rows.end(), part.begin(), part.end());
    } else {
      rows.push_back({job.config, estimate(job.config, options)});
    }
  }
  return rows;
}

}  // namespace mcsched
