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

#include "mcsched/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "mcsched/error.hpp"

namespace mcsched {

unsigned AlphaSpec::resolve(unsigned n_users) const {
  switch (role) {
    case Role::Worst:
      return 1;
    case Role::Median:
      return 2;
    case Role::Best:
      return n_users;
    case Role::Explicit:
      break;
  }
  return value;
}

bool is_static(SchemeKind s) {
  return s == SchemeKind::Static || s == SchemeKind::MultigroupStatic;
}

bool is_cooperative(SchemeKind s) {
  return s == SchemeKind::Cooperative || s == SchemeKind::MultigroupCooperative;
}

void validate(const SimConfig& c) {
  require(c.n_users >= 1, "n-users must be >= 1");
  require(c.groups >= 1, "groups must be >= 1");
  require(c.antennas >= 1, "antennas must be >= 1");
  require(c.power > 0.0 && std::isfinite(c.power), "power must be positive");
  require(c.packet_nats > 0.0 && std::isfinite(c.packet_nats), "packet-nats must be positive");
  require(c.coherence.value > 0.0 && std::isfinite(c.coherence.value),
          "coherence parameter must be positive");
  require(c.iterations >= 1, "iterations must be >= 1");
  if (is_static(c.scheme)) {
    const unsigned a = c.alpha.resolve(c.n_users);
    require(a >= 1 && a <= c.n_users && c.n_users % a == 0,
            "alpha=" + std::to_string(a) + " does not divide n-users=" + std::to_string(c.n_users));
  }
  if (c.scheme == SchemeKind::Static || c.scheme == SchemeKind::IncrementalRedundancy ||
      c.scheme == SchemeKind::Cooperative)
    require(c.groups == 1, scheme_label(c) + " is single-group; use a multigroup scheme for G > 1");
  if (is_cooperative(c.scheme))
    require(c.n_users >= 2 && c.n_users % 2 == 0, "cooperative schemes need even n-users >= 2");
  if (c.scheme == SchemeKind::IncrementalRedundancy) {
    require(c.rate_target > 0.0 && std::isfinite(c.rate_target), "rate-target must be positive");
    require(!c.attempt_cap || *c.attempt_cap >= 1, "attempt-cap must be >= 1");
  }
  if (c.rate_model.mode == RateModelSpec::Mode::ExponentialFixed)
    require(c.rate_model.mu > 0.0, "rate-model mu must be positive");
}

std::string scheme_label(const SimConfig& c) {
  auto role_suffix = [&]() -> std::string {
    switch (c.alpha.role) {
      case AlphaSpec::Role::Worst:
        return "-worst";
      case AlphaSpec::Role::Median:
        return "-median";
      case AlphaSpec::Role::Best:
        return "-best";
      case AlphaSpec::Role::Explicit:
        break;
    }
    return "";
  };
  switch (c.scheme) {
    case SchemeKind::Static:
      return "static" + role_suffix();
    case SchemeKind::MultigroupStatic:
      return "multigroup-static" + role_suffix();
    case SchemeKind::IncrementalRedundancy:
      return "ir";
    case SchemeKind::Cooperative:
      return "coop";
    case SchemeKind::MultigroupCooperative:
      return "multigroup-coop";
  }
  return "?";
}

void apply_scheme_label(SimConfig& c, std::string_view label) {
  auto with_role = [&](std::string_view base, SchemeKind kind) {
    if (label.substr(0, base.size()) != base) return false;
    const std::string_view rest = label.substr(base.size());
    if (rest.empty()) {
      c.scheme = kind;
      if (c.alpha.role != AlphaSpec::Role::Explicit) c.alpha = AlphaSpec::explicit_value(1);
      return true;
    }
    if (rest == "-worst") c.alpha = AlphaSpec::worst();
    else if (rest == "-median") c.alpha = AlphaSpec::median();
    else if (rest == "-best") c.alpha = AlphaSpec::best();
    else return false;
    c.scheme = kind;
    return true;
  };
  if (label == "ir") c.scheme = SchemeKind::IncrementalRedundancy;
  else if (label == "coop") c.scheme = SchemeKind::Cooperative;
  else if (label == "multigroup-coop") c.scheme = SchemeKind::MultigroupCooperative;
  else if (with_role("multigroup-static", SchemeKind::MultigroupStatic)) {
  } else if (with_role("static", SchemeKind::Static)) {
  } else {
    fail(ErrorCode::InvalidArgument, "unknown scheme '" + std::string(label) + "'");
  }
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::N:
      return "N";
    case SweepAxis::G:
      return "G";
    case SweepAxis::Alpha:
      return "alpha";
    case SweepAxis::L:
      return "L";
    case SweepAxis::P:
      return "P";
    case SweepAxis::S:
      return "S";
  }
  return "?";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "N") return SweepAxis::N;
  if (name == "G") return SweepAxis::G;
  if (name == "alpha") return SweepAxis::Alpha;
  if (name == "L") return SweepAxis::L;
  if (name == "P") return SweepAxis::P;
  if (name == "S") return SweepAxis::S;
  fail(ErrorCode::InvalidArgument,
       "unknown sweep axis '" + std::string(name) + "' (expected N, G, alpha, L, P or S)");
}

namespace {

std::string fmt_value(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

unsigned as_count(double v, SweepAxis axis) {
  require(v >= 1.0 && v == std::floor(v) && v < 4.0e9,
          "sweep " + axis_name(axis) + "=" + fmt_value(v) + " is not a positive integer");
  return static_cast<unsigned>(v);
}

}  // namespace

SimConfig with_axis_value(const SimConfig& base, SweepAxis axis, double value) {
  SimConfig c = base;
  switch (axis) {
    case SweepAxis::N:
      c.n_users = as_count(value, axis);
      break;
    case SweepAxis::G:
      c.groups = as_count(value, axis);
      break;
    case SweepAxis::Alpha:
      c.alpha = AlphaSpec::explicit_value(as_count(value, axis));
      break;
    case SweepAxis::L:
      c.antennas = as_count(value, axis);
      break;
    case SweepAxis::P:
      c.power = value;
      break;
    case SweepAxis::S:
      c.packet_nats = value;
      break;
  }
  try {
    validate(c);
  } catch (const Error& e) {
    fail(ErrorCode::InvalidArgument,
         "sweep " + axis_name(axis) + "=" + fmt_value(value) + ": " + e.what());
  }
  return c;
}

namespace {

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const std::string& why) {
  fail(ErrorCode::Parse,
       "key '" + std::string(key) + "': invalid value '" + std::string(value) + "' (" + why + ")");
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_int(std::string_view key, std::string_view v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) bad_value(key, v, "expected an integer");
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
    bad_value(key, v, "expected a real number");
  return out;
}

double parse_positive(std::string_view key, std::string_view v) {
  const double d = parse_real(key, v);
  if (!(d > 0.0)) bad_value(key, v, "must be positive");
  return d;
}

unsigned parse_count(std::string_view key, std::string_view v) {
  const auto n = parse_int<long long>(key, v);
  if (n < 1 || n > 1000000) bad_value(key, v, "must be an integer >= 1");
  return static_cast<unsigned>(n);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void set_on_config(SimConfig& c, std::string_view key, std::string_view v) {
  if (key == "scheme") {
    try {
      apply_scheme_label(c, v);
    } catch (const Error& e) {
      bad_value(key, v, "expected static[-worst|-median|-best], multigroup-static[...], ir, coop "
                        "or multigroup-coop");
    }
  } else if (key == "alpha") {
    if (v == "worst") c.alpha = AlphaSpec::worst();
    else if (v == "median") c.alpha = AlphaSpec::median();
    else if (v == "best" || v == "N") c.alpha = AlphaSpec::best();
    else c.alpha = AlphaSpec::explicit_value(parse_count(key, v));
  } else if (key == "n-users") {
    c.n_users = parse_count(key, v);
  } else if (key == "groups") {
    c.groups = parse_count(key, v);
  } else if (key == "antennas") {
    c.antennas = parse_count(key, v);
  } else if (key == "power") {
    c.power = parse_positive(key, v);
  } else if (key == "packet-nats") {
    c.packet_nats = parse_positive(key, v);
  } else if (key == "coherence") {
    const auto colon = v.find(':');
    if (colon == std::string_view::npos) bad_value(key, v, "expected fixed:X or scaled:X");
    const auto mode = v.substr(0, colon);
    const double x = parse_positive(key, v.substr(colon + 1));
    if (mode == "fixed") c.coherence = CoherencePolicy::fixed(x);
    else if (mode == "scaled") c.coherence = CoherencePolicy::scaled(x);
    else bad_value(key, v, "expected fixed:X or scaled:X");
  } else if (key == "iterations") {
    const auto n = parse_int<long long>(key, v);
    if (n < 1) bad_value(key, v, "must be >= 1");
    c.iterations = static_cast<std::uint64_t>(n);
  } else if (key == "seed") {
    c.seed = parse_int<std::uint64_t>(key, v);
  } else if (key == "rate-target") {
    c.rate_target = parse_positive(key, v);
  } else if (key == "attempt-cap") {
    if (v == "none" || v == "unbounded") c.attempt_cap.reset();
    else c.attempt_cap = parse_count(key, v);
  } else if (key == "rate-model") {
    if (v == "empirical") c.rate_model = {RateModelSpec::Mode::Empirical, 1.0};
    else if (v == "exponential") c.rate_model = {RateModelSpec::Mode::ExponentialDerived, 1.0};
    else if (v.substr(0, 12) == "exponential:")
      c.rate_model = {RateModelSpec::Mode::ExponentialFixed, parse_positive(key, v.substr(12))};
    else bad_value(key, v, "expected empirical, exponential or exponential:MU");
  } else if (key == "metrics") {
    if (v == "both") c.metrics = MetricsSelection::Both;
    else if (v == "throughput") c.metrics = MetricsSelection::Throughput;
    else if (v == "delay") c.metrics = MetricsSelection::Delay;
    else bad_value(key, v, "expected both, throughput or delay");
  } else if (key == "scaling-metric") {
    if (v == "auto") c.scaling_metric.reset();
    else if (v == "throughput") c.scaling_metric = Metric::Throughput;
    else if (v == "delay") c.scaling_metric = Metric::Delay;
    else bad_value(key, v, "expected auto, throughput or delay");
  } else {
    fail(ErrorCode::Parse, "unknown key '" + std::string(key) + "'");
  }
}

Sweep parse_sweep(std::string_view v) {
  const auto eq = v.find('=');
  if (eq == std::string_view::npos) bad_value("sweep", v, "expected AXIS=v1,v2,...");
  Sweep s;
  try {
    s.axis = parse_axis(trim(v.substr(0, eq)));
  } catch (const Error& e) {
    bad_value("sweep", v, e.what());
  }
  for (auto item : split(v.substr(eq + 1), ',')) s.values.push_back(parse_real("sweep", item));
  return s;
}

}  // namespace

const std::vector<std::string>& setting_keys() {
  static const std::vector<std::string> keys = {
      "scheme",   "alpha",       "n-users",     "groups",         "antennas",
      "power",    "packet-nats", "coherence",   "iterations",     "seed",
      "rate-target", "attempt-cap", "rate-model", "metrics",      "scaling-metric",
      "sweep",    "out"};
  return keys;
}

void apply_setting(Experiment& ex, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "out") {
    if (value.empty()) bad_value(key, value, "empty path");
    ex.out_path = std::string(value);
    return;
  }
  if (key == "sweep") {
    const Sweep s = parse_sweep(value);
    for (auto& job : ex.jobs) job.sweep = s;
    return;
  }
  for (auto& job : ex.jobs) set_on_config(job.config, key, value);
}

Experiment parse_experiment(std::string_view text) {
  Experiment ex;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string prefix = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(ErrorCode::Parse, prefix + "expected 'key = value', got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    if (!seen.insert(std::string(key)).second)
      fail(ErrorCode::Parse, prefix + "key '" + std::string(key) + "' given twice");
    try {
      apply_setting(ex, key, line.substr(eq + 1));
    } catch (const Error& e) {
      fail(ErrorCode::Parse, prefix + e.what());
    }
  }
  for (std::size_t i = 0; i < ex.jobs.size(); ++i) {
    try {
      if (ex.jobs[i].sweep) {
        for (double v : ex.jobs[i].sweep->values)
          (void)with_axis_value(ex.jobs[i].config, ex.jobs[i].sweep->axis, v);
      } else {
        validate(ex.jobs[i].config);
      }
    } catch (const Error& e) {
      fail(ErrorCode::Parse, std::string("configuration: ") + e.what());
    }
  }
  return ex;
}

Experiment load_experiment_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open experiment file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str());
}

namespace {

Sweep n_sweep() { return {SweepAxis::N, {2, 4, 6, 8, 10, 12, 14, 16, 18, 20}}; }

Experiment::Job job(const std::string& label, MetricsSelection metrics, unsigned groups,
                    std::optional<Sweep> sweep) {
  Experiment::Job j;
  apply_scheme_label(j.config, label);
  j.config.groups = groups;
  j.config.metrics = metrics;
  j.sweep = std::move(sweep);
  return j;
}

}  // namespace

const std::vector<std::string>& recipe_names() {
  static const std::vector<std::string> names = {"fig-tpos", "fig-compt", "fig-compd", "fig-t5",
                                                 "fig-d5"};
  return names;
}

Experiment recipe(std::string_view name) {
  Experiment ex;
  ex.jobs.clear();
  ex.out_path = std::string(name) + ".csv";
  if (name == "fig-tpos") {
    auto j = job("static", MetricsSelection::Throughput, 1, Sweep{SweepAxis::Alpha, {1, 2, 5, 10}});
    j.config.n_users = 10;
    ex.jobs.push_back(j);
  } else if (name == "fig-compt" || name == "fig-compd") {
    const auto m = name == "fig-compt" ? MetricsSelection::Throughput : MetricsSelection::Delay;
    for (const char* s : {"static-worst", "static-median", "static-best", "ir", "coop"})
      ex.jobs.push_back(job(s, m, 1, n_sweep()));
  } else if (name == "fig-t5" || name == "fig-d5") {
    const auto m = name == "fig-t5" ? MetricsSelection::Throughput : MetricsSelection::Delay;
    for (const char* s : {"multigroup-static-worst", "multigroup-static-median",
                          "multigroup-static-best", "multigroup-coop"})
      ex.jobs.push_back(job(s, m, 5, n_sweep()));
  } else {
    fail(ErrorCode::InvalidArgument, "unknown recipe '" + std::string(name) + "'");
  }
  return ex;
}

}  // namespace mcsched
