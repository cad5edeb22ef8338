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

#include "mcsched/csv.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "mcsched/error.hpp"

namespace mcsched {

namespace {

constexpr std::string_view kHeader =
    "scheme,N,G,alpha,L,P,S,iterations,seed,throughput_nats,throughput_se,delay_slots,delay_se,"
    "analytic_throughput,predicted_scaling";
constexpr std::size_t kColumns = 15;

std::string num(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(std::uint64_t v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

}  // namespace

std::string_view csv_header() { return kHeader; }

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kHeader << '\n';
  for (const auto& row : rows) {
    const SimConfig& c = row.config;
    const MetricsRecord& m = row.metrics;
    const std::string alpha = is_static(c.scheme) ? num(std::uint64_t{c.alpha.resolve(c.n_users)}) : "";
    out << scheme_label(c) << ',' << num(std::uint64_t{c.n_users}) << ','
        << num(std::uint64_t{c.groups}) << ',' << alpha << ',' << num(std::uint64_t{c.antennas}) << ',' << num(c.power) << ',' << num(c.packet_nats) << ','
        << num(c.iterations) << ',' << num(c.seed) << ',' << opt(m.throughput_mean) << ','
        << opt(m.throughput_se) << ',' << opt(m.delay_mean) << ',' << opt(m.delay_se) << ','
        << opt(m.analytic_throughput) << ',' << opt(m.predicted_scaling_value) << '\n';
  }
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream ss;
  write_csv(ss, rows);
  return ss.str();
}

namespace {

struct FieldReader {
  std::size_t line;

  [[noreturn]] void bad(std::string_view column, std::string_view text) const {
    fail(ErrorCode::Parse, "line " + std::to_string(line) + ": column " + std::string(column) +
                               ": cannot parse '" + std::string(text) + "'");
  }

  template <class T>
  T integer(std::string_view column, std::string_view s) const {
    T v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) bad(column, s);
    return v;
  }

  double real(std::string_view column, std::string_view s) const {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) bad(column, s);
    return v;
  }

  std::optional<double> maybe(std::string_view column, std::string_view s) const {
    if (s.empty()) return std::nullopt;
    return real(column, s);
  }
};

std::vector<std::string_view> fields_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

std::vector<CsvRecord> parse_csv(std::string_view text) {
  std::vector<CsvRecord> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool header_seen = false;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kHeader)
        fail(ErrorCode::Parse, "line 1: header does not match the expected column list");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = fields_of(line);
    if (f.size() != kColumns)
      fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": expected " +
                                 std::to_string(kColumns) + " fields, found " +
                                 std::to_string(f.size()));
    const FieldReader r{line_no};
    CsvRecord rec;
    if (f[0].empty()) r.bad("scheme", f[0]);
    rec.scheme = std::string(f[0]);
    rec.n_users = r.integer<unsigned>("N", f[1]);
    rec.groups = r.integer<unsigned>("G", f[2]);
    if (!f[3].empty()) rec.alpha = r.integer<unsigned>("alpha", f[3]);
    rec.antennas = r.integer<unsigned>("L", f[4]);
    rec.power = r.real("P", f[5]);
    rec.packet_nats = r.real("S", f[6]);
    rec.iterations = r.integer<std::uint64_t>("iterations", f[7]);
    rec.seed = r.integer<std::uint64_t>("seed", f[8]);
    rec.throughput = r.maybe("throughput_nats", f[9]);
    rec.throughput_se = r.maybe("throughput_se", f[10]);
    rec.delay = r.maybe("delay_slots", f[11]);
    rec.delay_se = r.maybe("delay_se", f[12]);
    rec.analytic_throughput = r.maybe("analytic_throughput", f[13]);
    rec.predicted_scaling = r.maybe("predicted_scaling", f[14]);
    out.push_back(std::move(rec));
  }
  if (!header_seen) fail(ErrorCode::Parse, "empty CSV");
  if (out.empty()) fail(ErrorCode::Parse, "CSV has a header but no data rows");
  return out;
}

namespace {

constexpr std::array<const char*, 6> kAxes = {"N", "G", "alpha", "L", "P", "S"};

std::array<double, 6> params_of(const CsvRecord& r) {
  return {double(r.n_users), double(r.groups), r.alpha ? double(*r.alpha) : 0.0,
          double(r.antennas), r.power, r.packet_nats};
}

bool has_role_suffix(const std::string& scheme) {
  for (const char* s : {"-worst", "-median", "-best"}) {
    const std::string_view suf(s);
    if (scheme.size() >= suf.size() && scheme.compare(scheme.size() - suf.size(), suf.size(), suf) == 0)
      return true;
  }
  return false;
}

}  // namespace

std::vector<PlotSeries> make_plot_series(const std::vector<CsvRecord>& records) {
  std::vector<std::string> schemes;
  for (const auto& r : records)
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
      schemes.push_back(r.scheme);

  std::vector<PlotSeries> out;
  for (const auto& scheme : schemes) {
    std::vector<const CsvRecord*> rows;
    for (const auto& r : records)
      if (r.scheme == scheme) rows.push_back(&r);

    std::array<bool, 6> varies{};
    const auto first = params_of(*rows.front());
    for (const auto* r : rows) {
      const auto p = params_of(*r);
      for (std::size_t k = 0; k < 6; ++k) varies[k] = varies[k] || p[k] != first[k];
    }
    if (has_role_suffix(scheme)) varies[2] = false;
    std::size_t x_axis = 0;
    for (std::size_t k = 0; k < 6; ++k)
      if (varies[k]) {
        x_axis = k;
        break;
      }

    // Rows sharing every other varying column form one series.
    std::map<std::string, std::vector<const CsvRecord*>> split;
    std::vector<std::string> order;
    for (const auto* r : rows) {
      const auto p = params_of(*r);
      std::string key;
      for (std::size_t k = 0; k < 6; ++k)
        if (varies[k] && k != x_axis) key += std::string("_") + kAxes[k] + num(p[k]);
      if (!split.count(key)) order.push_back(key);
      split[key].push_back(r);
    }

    for (const auto& key : order) {
      auto pts = split[key];
      std::stable_sort(pts.begin(), pts.end(), [&](const CsvRecord* a, const CsvRecord* b) {
        return params_of(*a)[x_axis] < params_of(*b)[x_axis];
      });
      for (const char* metric : {"throughput", "delay"}) {
        const bool thr = std::string_view(metric) == "throughput";
        PlotSeries s;
        s.name = scheme + key + "_" + metric;
        s.x_name = kAxes[x_axis];
        s.metric = metric;
        for (const auto* r : pts) {
          const auto& mean = thr ? r->throughput : r->delay;
          if (!mean) continue;
          const auto& se = thr ? r->throughput_se : r->delay_se;
          s.x.push_back(params_of(*r)[x_axis]);
          s.mean.push_back(*mean);
          s.se.push_back(se.value_or(0.0));
        }
        if (!s.x.empty()) out.push_back(std::move(s));
      }
    }
  }
  return out;
}

std::string format_series(const PlotSeries& s) {
  std::string text = "# " + s.x_name + " " + s.metric + " se\n";
  for (std::size_t i = 0; i < s.x.size(); ++i)
    text += num(s.x[i]) + " " + num(s.mean[i]) + " " + num(s.se[i]) + "\n";
  return text;
}

}  // namespace mcsched
