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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mcsched/simcore.hpp"

namespace mcsched {

/// The fixed column list, without trailing newline.
std::string_view csv_header();

/// Header plus one line per row. Numbers use the shortest round-trip form
/// ("C" locale), missing values are empty fields, lines end in LF.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::string to_csv(const std::vector<ResultRow>& rows);

/// One parsed CSV line.
struct CsvRecord {
  std::string scheme;
  unsigned n_users = 0;
  unsigned groups = 0;
  std::optional<unsigned> alpha;
  unsigned antennas = 0;
  double power = 0.0;
  double packet_nats = 0.0;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  std::optional<double> throughput, throughput_se;
  std::optional<double> delay, delay_se;
  std::optional<double> analytic_throughput, predicted_scaling;
};

/// Parses text produced by write_csv. Throws Error(Parse) with the line
/// number on a wrong header, a wrong field count or a malformed number, and
/// on input without data rows.
std::vector<CsvRecord> parse_csv(std::string_view text);

/// A whitespace-separated series: x, mean, standard error.
struct PlotSeries {
  std::string name;    // file stem, e.g. "static-median_throughput" or "coop_G5_delay"
  std::string x_name;  // N, G, alpha, L, P or S
  std::string metric;  // throughput or delay
  std::vector<double> x, mean, se;
};

/// Splits records by scheme and by every parameter column that varies within
/// a scheme other than the x column. The x column is the first varying one of
/// N, G, alpha, L, P, S (N if none varies); alpha is not counted for role
/// labels such as static-median, where it follows N. Points are sorted by x.
std::vector<PlotSeries> make_plot_series(const std::vector<CsvRecord>& records);

/// "# x metric se" header line, then one line per point.
std::string format_series(const PlotSeries& series);

}  // namespace mcsched
