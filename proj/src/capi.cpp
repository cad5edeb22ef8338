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

#include "mcsched/mcsched.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "mcsched/analytic.hpp"
#include "mcsched/config.hpp"
#include "mcsched/csv.hpp"
#include "mcsched/error.hpp"
#include "mcsched/simcore.hpp"
#include "mcsched/verify.hpp"

struct mcs_experiment {
  mcsched::Experiment experiment;
};

struct mcs_results {
  std::vector<mcsched::ResultRow> rows;
  std::string csv;
};

namespace {

thread_local std::string g_last_error;

mcs_status status_of(mcsched::ErrorCode code) {
  using mcsched::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument:
      return MCS_INVALID_ARGUMENT;
    case ErrorCode::OutOfDomain:
      return MCS_OUT_OF_DOMAIN;
    case ErrorCode::Unsupported:
      return MCS_UNSUPPORTED;
    case ErrorCode::InvalidState:
      return MCS_INVALID_STATE;
    case ErrorCode::Parse:
      return MCS_PARSE_ERROR;
    case ErrorCode::Io:
      return MCS_IO_ERROR;
  }
  return MCS_INTERNAL_ERROR;
}

// Runs f, translating exceptions into a status and the thread's last error.
template <class F>
mcs_status guarded(F&& f) {
  try {
    f();
    return MCS_OK;
  } catch (const mcsched::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return MCS_INTERNAL_ERROR;
}

mcs_status null_arg(const char* what) {
  g_last_error = std::string(what) + " must not be NULL";
  return MCS_INVALID_ARGUMENT;
}

const char* name_list(const std::vector<std::string>& names, std::string& storage) {
  if (storage.empty()) {
    for (const auto& n : names) {
      storage += n;
      storage.push_back('\0');
    }
    storage.push_back('\0');
  }
  return storage.data();
}

template <class Make>
mcs_status make_experiment(mcs_experiment** out, Make make) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new mcs_experiment{make()}; });
}

}  // namespace

extern "C" {

const char* mcs_last_error(void) { return g_last_error.c_str(); }

const char* mcs_status_name(mcs_status s) {
  switch (s) {
    case MCS_OK:
      return "ok";
    case MCS_INVALID_ARGUMENT:
      return "invalid-argument";
    case MCS_OUT_OF_DOMAIN:
      return "out-of-domain";
    case MCS_UNSUPPORTED:
      return "unsupported";
    case MCS_INVALID_STATE:
      return "invalid-state";
    case MCS_PARSE_ERROR:
      return "parse-error";
    case MCS_IO_ERROR:
      return "io-error";
    case MCS_INTERNAL_ERROR:
      return "internal-error";
  }
  return "unknown";
}

const char* mcs_version(void) { return "0.1.0"; }

mcs_status mcs_experiment_create(mcs_experiment** out) {
  return make_experiment(out, [] { return mcsched::Experiment{}; });
}

mcs_status mcs_experiment_parse(const char* text, mcs_experiment** out) {
  if (!text) return null_arg("text");
  return make_experiment(out, [&] { return mcsched::parse_experiment(text); });
}

mcs_status mcs_experiment_load_file(const char* path, mcs_experiment** out) {
  if (!path) return null_arg("path");
  return make_experiment(out, [&] { return mcsched::load_experiment_file(path); });
}

mcs_status mcs_experiment_from_recipe(const char* name, mcs_experiment** out) {
  if (!name) return null_arg("name");
  return make_experiment(out, [&] { return mcsched::recipe(name); });
}

void mcs_experiment_destroy(mcs_experiment* e) { delete e; }

mcs_status mcs_experiment_set(mcs_experiment* e, const char* key, const char* value) {
  if (!e) return null_arg("experiment");
  if (!key || !value) return null_arg("key/value");
  return guarded([&] { mcsched::apply_setting(e->experiment, key, value); });
}

mcs_status mcs_experiment_validate(const mcs_experiment* e) {
  if (!e) return null_arg("experiment");
  return guarded([&] {
    for (const auto& job : e->experiment.jobs) {
      if (job.sweep) {
        for (double v : job.sweep->values)
          (void)mcsched::with_axis_value(job.config, job.sweep->axis, v);
      } else {
        mcsched::validate(job.config);
      }
    }
  });
}

const char* mcs_experiment_out_path(const mcs_experiment* e) {
  return e ? e->experiment.out_path.c_str() : "";
}

const char* mcs_setting_keys(void) {
  static std::string storage;
  return name_list(mcsched::setting_keys(), storage);
}

const char* mcs_recipe_names(void) {
  static std::string storage;
  return name_list(mcsched::recipe_names(), storage);
}

mcs_status mcs_run(const mcs_experiment* e, unsigned threads, mcs_results** out) {
  if (!e) return null_arg("experiment");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto r = std::make_unique<mcs_results>();
    r->rows = mcsched::run_experiment(e->experiment, mcsched::RunOptions{threads});
    r->csv = mcsched::to_csv(r->rows);
    *out = r.release();
  });
}

void mcs_results_destroy(mcs_results* r) { delete r; }

size_t mcs_results_count(const mcs_results* r) { return r ? r->rows.size() : 0; }

mcs_status mcs_results_get(const mcs_results* r, size_t index, mcs_record* out) {
  if (!r) return null_arg("results");
  if (!out) return null_arg("out");
  if (index >= r->rows.size()) {
    g_last_error = "result index " + std::to_string(index) + " out of range";
    return MCS_INVALID_ARGUMENT;
  }
  return guarded([&] {
    const auto& row = r->rows[index];
    const auto& c = row.config;
    const auto& m = row.metrics;
    mcs_record rec{};
    const std::string label = mcsched::scheme_label(c);
    std::strncpy(rec.scheme, label.c_str(), sizeof rec.scheme - 1);
    rec.n_users = c.n_users;
    rec.groups = c.groups;
    rec.alpha = mcsched::is_static(c.scheme) ? c.alpha.resolve(c.n_users) : 0;
    rec.antennas = c.antennas;
    rec.power = c.power;
    rec.packet_nats = c.packet_nats;
    rec.iterations = c.iterations;
    rec.seed = c.seed;
    rec.has_throughput = m.throughput_mean.has_value();
    rec.throughput_mean = m.throughput_mean.value_or(0.0);
    rec.throughput_se = m.throughput_se.value_or(0.0);
    rec.has_delay = m.delay_mean.has_value();
    rec.delay_mean = m.delay_mean.value_or(0.0);
    rec.delay_se = m.delay_se.value_or(0.0);
    rec.has_analytic_throughput = m.analytic_throughput.has_value();
    rec.analytic_throughput = m.analytic_throughput.value_or(0.0);
    rec.has_predicted_scaling = m.predicted_scaling_value.has_value();
    rec.predicted_scaling = m.predicted_scaling_value.value_or(0.0);
    *out = rec;
  });
}

mcs_status mcs_results_write_csv(const mcs_results* r, const char* path) {
  if (!r) return null_arg("results");
  if (!path) return null_arg("path");
  return guarded([&] {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) mcsched::fail(mcsched::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
    f << r->csv;
    f.close();
    if (!f) mcsched::fail(mcsched::ErrorCode::Io, std::string("failed writing '") + path + "'");
  });
}

const char* mcs_results_csv(const mcs_results* r) { return r ? r->csv.c_str() : ""; }

mcs_status mcs_plotdata(const char* const* csv_paths, size_t count, const char* out_dir,
                        mcs_file_callback on_file, void* user) {
  if (!csv_paths && count > 0) return null_arg("csv_paths");
  if (!out_dir) return null_arg("out_dir");
  return guarded([&] {
    using mcsched::ErrorCode;
    if (count == 0) mcsched::fail(ErrorCode::InvalidArgument, "no CSV files given");
    std::vector<mcsched::CsvRecord> records;
    for (size_t i = 0; i < count; ++i) {
      std::ifstream in(csv_paths[i], std::ios::binary);
      if (!in) mcsched::fail(ErrorCode::Io, std::string("cannot open '") + csv_paths[i] + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      try {
        auto part = mcsched::parse_csv(ss.str());
        records.insert(records.end(), part.begin(), part.end());
      } catch (const mcsched::Error& e) {
        mcsched::fail(e.code(), std::string(csv_paths[i]) + ": " + e.what());
      }
    }
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) mcsched::fail(ErrorCode::Io, "cannot create directory '" + dir.string() + "'");
    for (const auto& s : mcsched::make_plot_series(records)) {
      const auto path = (dir / (s.name + ".dat")).string();
      std::ofstream f(path, std::ios::binary | std::ios::trunc);
      f << mcsched::format_series(s);
      f.close();
      if (!f) mcsched::fail(ErrorCode::Io, "failed writing '" + path + "'");
      if (on_file) on_file(path.c_str(), user);
    }
  });
}

mcs_status mcs_verify(const char* filter, unsigned threads, mcs_check_callback on_check,
                      void* user, int* all_passed) {
  return guarded([&] {
    mcsched::VerifyOptions o;
    if (filter) o.filter = filter;
    o.threads = threads;
    bool ok = true;
    for (const auto& c : mcsched::run_verify(o)) {
      ok = ok && c.passed;
      if (on_check) on_check(c.name.c_str(), c.passed ? 1 : 0, c.detail.c_str(), c.seconds, user);
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
  });
}

mcs_status mcs_expint_ei(double x, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = mcsched::expint_ei(x); });
}

mcs_status mcs_static_throughput(unsigned n, unsigned alpha, double power, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = mcsched::static_throughput_closed_form(n, alpha, power); });
}

mcs_status mcs_static_throughput_quadrature(unsigned n, unsigned alpha, double power,
                                            unsigned groups, unsigned antennas, double* out) {
  if (!out) return null_arg("out");
  return guarded(
      [&] { *out = mcsched::static_throughput_quadrature(n, alpha, power, groups, antennas); });
}

mcs_status mcs_coupon_expected_trials(double queues, unsigned alpha, unsigned services,
                                      double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = mcsched::coupon_collector_expected_trials(queues, alpha, services); });
}

mcs_status mcs_service_time_pmf(double mu, double capacity, uint64_t k, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = mcsched::service_time_pmf({mu, capacity}, k); });
}

}  // extern "C"
