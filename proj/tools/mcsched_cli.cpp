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

// mcsched command-line front end. Talks to the library only through the C API.
//
//   mcsched run [--config FILE | --recipe NAME] [--KEY VALUE ...] [--out PATH]
//   mcsched verify [--filter NAME]
//   mcsched plotdata CSV... [--out-dir DIR]
//
// Exit codes: 0 success, 1 runtime failure or failed check, 2 bad input.

#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcsched/mcsched.h"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitInput = 2;

std::vector<std::string> split_names(const char* list) {
  std::vector<std::string> out;
  for (const char* p = list; *p; p += out.back().size() + 1) out.emplace_back(p);
  return out;
}

int report(mcs_status s, int code) {
  std::fprintf(stderr, "mcsched: %s: %s\n", mcs_status_name(s), mcs_last_error());
  return code;
}

bool is_input_error(mcs_status s) {
  return s == MCS_PARSE_ERROR || s == MCS_INVALID_ARGUMENT || s == MCS_IO_ERROR;
}

struct RunArgs {
  std::string config;
  std::string recipe;
  std::map<std::string, std::string> settings;
  unsigned threads = 0;
};

void print_row(const mcs_record& r) {
  std::printf("%-26s N=%-4u G=%-2u", r.scheme, r.n_users, r.groups);
  if (r.alpha) std::printf(" alpha=%-4u", r.alpha);
  if (r.antennas > 1) std::printf(" L=%u", r.antennas);
  if (r.has_throughput) std::printf("  throughput %.5g +- %.2g nats/slot", r.throughput_mean, r.throughput_se);
  if (r.has_analytic_throughput) std::printf(" (exact %.5g)", r.analytic_throughput);
  if (r.has_delay) std::printf("  delay %.5g +- %.2g slots", r.delay_mean, r.delay_se);
  std::printf("\n");
}

int cmd_run(const RunArgs& a) {
  mcs_experiment* ex = nullptr;
  mcs_status s;
  if (!a.config.empty() && !a.recipe.empty()) {
    std::fprintf(stderr, "mcsched: --config and --recipe are mutually exclusive\n");
    return kExitInput;
  }
  if (!a.config.empty()) s = mcs_experiment_load_file(a.config.c_str(), &ex);
  else if (!a.recipe.empty()) s = mcs_experiment_from_recipe(a.recipe.c_str(), &ex);
  else s = mcs_experiment_create(&ex);
  if (s != MCS_OK) return report(s, kExitInput);

  // Flags override file and recipe values, applied in schema order.
  for (const auto& key : split_names(mcs_setting_keys())) {
    auto it = a.settings.find(key);
    if (it == a.settings.end()) continue;
    s = mcs_experiment_set(ex, key.c_str(), it->second.c_str());
    if (s != MCS_OK) {
      std::fprintf(stderr, "mcsched: --%s: %s\n", key.c_str(), mcs_last_error());
      mcs_experiment_destroy(ex);
      return kExitInput;
    }
  }
  s = mcs_experiment_validate(ex);
  if (s != MCS_OK) {
    mcs_experiment_destroy(ex);
    return report(s, kExitInput);
  }

  mcs_results* res = nullptr;
  s = mcs_run(ex, a.threads, &res);
  const std::string out_path = mcs_experiment_out_path(ex);
  mcs_experiment_destroy(ex);
  if (s != MCS_OK) return report(s, kExitRuntime);

  if (out_path.empty()) {
    std::fputs(mcs_results_csv(res), stdout);
  } else {
    for (size_t i = 0; i < mcs_results_count(res); ++i) {
      mcs_record r;
      if (mcs_results_get(res, i, &r) == MCS_OK) print_row(r);
    }
    s = mcs_results_write_csv(res, out_path.c_str());
    if (s != MCS_OK) {
      mcs_results_destroy(res);
      return report(s, kExitRuntime);
    }
    std::printf("wrote %zu rows to %s\n", mcs_results_count(res), out_path.c_str());
  }
  mcs_results_destroy(res);
  return 0;
}

void on_check(const char* name, int passed, const char* detail, double seconds, void*) {
  std::printf("[%s] %-14s %6.2fs  %s\n", passed ? "PASS" : "FAIL", name, seconds, detail);
  std::fflush(stdout);
}

int cmd_verify(const std::string& filter, unsigned threads) {
  int all = 0;
  const mcs_status s = mcs_verify(filter.c_str(), threads, on_check, nullptr, &all);
  if (s != MCS_OK) return report(s, is_input_error(s) ? kExitInput : kExitRuntime);
  std::printf(all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? 0 : kExitRuntime;
}

void on_file(const char* path, void*) { std::printf("%s\n", path); }

int cmd_plotdata(const std::vector<std::string>& csvs, const std::string& out_dir) {
  std::vector<const char*> paths;
  for (const auto& p : csvs) paths.push_back(p.c_str());
  const mcs_status s = mcs_plotdata(paths.data(), paths.size(), out_dir.c_str(), on_file, nullptr);
  if (s != MCS_OK) return report(s, is_input_error(s) ? kExitInput : kExitRuntime);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multicast scheduling simulator"};
  app.require_subcommand(0, 1);

  bool top_verify = false;
  std::string filter;
  unsigned threads = 0;
  app.add_flag("--verify", top_verify, "Run the verification checks");
  app.add_option("--filter", filter, "Only checks whose name contains this text");
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run an experiment and write CSV");
  run->add_option("--config", run_args.config, "Experiment file (key = value lines)");
  run->add_option("--recipe", run_args.recipe, "Named recipe: fig-tpos, fig-compt, fig-compd, fig-t5, fig-d5");
  run->add_option("--threads", run_args.threads, "Worker threads (0 = all cores)");
  for (const auto& key : split_names(mcs_setting_keys()))
    run->add_option("--" + key, run_args.settings[key]);

  auto* verify = app.add_subcommand("verify", "Check analytics against oracles and simulation");
  verify->add_option("--filter", filter, "Only checks whose name contains this text");
  verify->add_option("--threads", threads, "Worker threads (0 = all cores)");

  std::vector<std::string> csvs;
  std::string out_dir = ".";
  auto* plot = app.add_subcommand("plotdata", "Write gnuplot-ready series files from CSVs");
  plot->add_option("csv", csvs, "CSV files written by run")->required();
  plot->add_option("--out-dir", out_dir, "Directory for the series files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  // Only flags actually given become settings.
  for (auto it = run_args.settings.begin(); it != run_args.settings.end();)
    it = run->count("--" + it->first) ? std::next(it) : run_args.settings.erase(it);

  if (*run) return cmd_run(run_args);
  if (*verify || top_verify) return cmd_verify(filter, threads);
  if (*plot) return cmd_plotdata(csvs, out_dir);
  std::fputs(app.help().c_str(), stdout);
  return kExitInput;
}
