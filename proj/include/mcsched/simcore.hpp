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
#include <string>
#include <vector>

#include "mcsched/config.hpp"

namespace mcsched {

struct MetricsRecord {
  std::optional<double> throughput_mean;  // nats per slot
  std::optional<double> throughput_se;
  std::optional<double> delay_mean;  // slots
  std::optional<double> delay_se;
  std::optional<double> analytic_throughput;
  std::optional<double> predicted_scaling_value;
  std::uint64_t samples = 0;
};

struct RunOptions {
  /// Worker threads; 0 means hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

/// Iterations are grouped in fixed blocks of this many draws, each on its own
/// derived stream, so the estimate does not depend on how blocks are spread
/// over threads.
inline constexpr std::uint64_t kBlockIterations = 2048;

/// Static/coop: mean per-slot delivered nats over `iterations` slots.
/// IR: renewal-reward N R-bar E[success] / E[tau] over `iterations` codewords,
/// with a delta-method standard error.
MetricsRecord estimate_throughput(const SimConfig& config, const RunOptions& options = {});

/// Mean tagged-packet delay in slots over `iterations` runs.
MetricsRecord estimate_delay(const SimConfig& config, const RunOptions& options = {});

/// Both metrics as selected by config.metrics, plus the analytic fields.
MetricsRecord estimate(const SimConfig& config, const RunOptions& options = {});

/// Exact throughput when the scheme has one: the Ei closed forms for the
/// single-group static scheduler and the multi-group worst/best cases, the
/// quadrature form (N/alpha) \int log(1+xP) dF(x) for the remaining static
/// configurations. Empty for IR and cooperative schemes.
std::optional<double> analytic_throughput(const SimConfig& config);

/// Unit-constant growth expression for config.scaling_metric, when the scheme
/// has a known order.
std::optional<double> predicted_scaling_for(const SimConfig& config);

/// One output row: the exact config that produced it (seed included).
struct ResultRow {
  SimConfig config;
  MetricsRecord metrics;
};

/// One row per value. Row i runs with seed derive_seed(base.seed, i).
std::vector<ResultRow> run_sweep(const SimConfig& base, SweepAxis axis,
                                 const std::vector<double>& values,
                                 const RunOptions& options = {});

std::vector<ResultRow> run_experiment(const Experiment& experiment,
                                      const RunOptions& options = {});

}  // namespace mcsched
