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
#include <string_view>
#include <vector>

#include "mcsched/analytic.hpp"
#include "mcsched/channel.hpp"

namespace mcsched {

enum class SchemeKind {
  Static,
  MultigroupStatic,
  IncrementalRedundancy,
  Cooperative,
  MultigroupCooperative,
};

/// alpha either as a number or as a role that follows N through sweeps.
struct AlphaSpec {
  enum class Role { Explicit, Worst, Median, Best };
  Role role = Role::Explicit;
  unsigned value = 1;

  static AlphaSpec explicit_value(unsigned a) { return {Role::Explicit, a}; }
  static AlphaSpec worst() { return {Role::Worst, 1}; }
  static AlphaSpec median() { return {Role::Median, 2}; }
  static AlphaSpec best() { return {Role::Best, 0}; }

  unsigned resolve(unsigned n_users) const;
};

enum class MetricsSelection { Both, Throughput, Delay };

/// How the exponential-server mean is chosen for static delay runs.
struct RateModelSpec {
  enum class Mode { Empirical, ExponentialDerived, ExponentialFixed };
  Mode mode = Mode::Empirical;
  double mu = 1.0;  // ExponentialFixed only
};

/// One complete experiment point.
struct SimConfig {
  SchemeKind scheme = SchemeKind::Static;
  AlphaSpec alpha = AlphaSpec::explicit_value(1);
  unsigned n_users = 10;
  unsigned groups = 1;
  unsigned antennas = 1;
  double power = 1.0;
  double packet_nats = 1.0;
  CoherencePolicy coherence = CoherencePolicy::fixed(1.0);
  std::uint64_t iterations = 5000;
  std::uint64_t seed = 1;
  double rate_target = 1.0;  // IR R-bar, nats per channel use per attempt
  std::optional<std::uint64_t> attempt_cap;  // IR M
  RateModelSpec rate_model;
  MetricsSelection metrics = MetricsSelection::Both;
  /// Metric of the predicted_scaling column; unset follows `metrics`
  /// (delay for delay-only runs, throughput otherwise).
  std::optional<Metric> scaling_metric;
};

/// Throws Error(InvalidArgument) naming the offending field.
void validate(const SimConfig& config);

bool is_static(SchemeKind s);
bool is_cooperative(SchemeKind s);

/// "static", "static-median", "multigroup-static-best", "ir", "coop", ...
std::string scheme_label(const SimConfig& config);

/// Inverse of scheme_label: sets scheme (and alpha for role labels).
void apply_scheme_label(SimConfig& config, std::string_view label);

enum class SweepAxis { N, G, Alpha, L, P, S };

struct Sweep {
  SweepAxis axis = SweepAxis::N;
  std::vector<double> values;
};

std::string axis_name(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

/// Config with `axis` set to `value`; throws on values violating invariants.
SimConfig with_axis_value(const SimConfig& base, SweepAxis axis, double value);

/// A list of (config, optional sweep) jobs sharing one output path.
struct Experiment {
  struct Job {
    SimConfig config;
    std::optional<Sweep> sweep;
  };
  std::vector<Job> jobs{Job{}};
  std::string out_path;
};

/// Applies one `key = value` setting from the documented schema. `sweep` and
/// `out` act on the experiment, every other key on all jobs. Throws
/// Error(Parse) naming the key.
void apply_setting(Experiment& experiment, std::string_view key, std::string_view value);

/// Keys accepted by apply_setting, in documentation order.
const std::vector<std::string>& setting_keys();

/// Parses a `key = value` experiment file ('#' comments, blank lines ignored).
/// Unknown or repeated keys and invalid values throw Error(Parse) carrying
/// the 1-based line number and key.
Experiment parse_experiment(std::string_view text);
Experiment load_experiment_file(const std::string& path);

/// Named figure recipes: fig-tpos, fig-compt, fig-compd, fig-t5, fig-d5.
Experiment recipe(std::string_view name);
const std::vector<std::string>& recipe_names();

}  // namespace mcsched
