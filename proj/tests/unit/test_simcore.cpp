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

#include <doctest.h>

#include <cmath>

#include "mcsched/analytic.hpp"
#include "mcsched/error.hpp"
#include "mcsched/simcore.hpp"

using namespace mcsched;

namespace {

SimConfig static_config(unsigned n, unsigned alpha, std::uint64_t iterations = 20000) {
  SimConfig c;
  c.n_users = n;
  c.alpha = AlphaSpec::explicit_value(alpha);
  c.iterations = iterations;
  return c;
}

bool same(const MetricsRecord& a, const MetricsRecord& b) {
  return a.throughput_mean == b.throughput_mean && a.throughput_se == b.throughput_se &&
         a.delay_mean == b.delay_mean && a.delay_se == b.delay_se &&
         a.analytic_throughput == b.analytic_throughput &&
         a.predicted_scaling_value == b.predicted_scaling_value && a.samples == b.samples;
}

}  // namespace

TEST_SUITE("simcore") {

TEST_CASE("single-user static throughput") {
  auto c = static_config(1, 1, 100000);
  c.seed = 3;
  const auto r = estimate_throughput(c);
  CHECK(std::abs(*r.throughput_mean - 0.596347362323194) < 3.0 * *r.throughput_se);
  CHECK(*r.throughput_se > 0.0);
  CHECK(r.samples == 100000);
}

TEST_CASE("N = 10: median > best > worst throughput") {
  const double worst = *estimate_throughput(static_config(10, 1)).throughput_mean;
  const double median = *estimate_throughput(static_config(10, 2)).throughput_mean;
  const double best = *estimate_throughput(static_config(10, 10)).throughput_mean;
  CHECK(median > best);
  CHECK(best > worst);
}

TEST_CASE("IR with a tiny rate target delivers N R-bar per slot") {
  SimConfig c;
  c.scheme = SchemeKind::IncrementalRedundancy;
  c.n_users = 8;
  c.rate_target = 1e-9;
  c.iterations = 1000;
  const auto r = estimate(c);
  CHECK(*r.throughput_mean == doctest::Approx(8e-9).epsilon(1e-12));
  CHECK(*r.delay_mean == 1.0);
}

TEST_CASE("IR renewal-reward identity") {
  for (unsigned n : {4u, 16u})
    for (double rbar : {0.5, 2.0}) {
      SimConfig c;
      c.scheme = SchemeKind::IncrementalRedundancy;
      c.n_users = n;
      c.rate_target = rbar;
      c.iterations = 20000;
      c.seed = n * 10 + static_cast<unsigned>(rbar * 2);
      const auto r = estimate(c);
      const double rse = std::hypot(*r.throughput_se / *r.throughput_mean, *r.delay_se / *r.delay_mean);
      CHECK(std::abs(*r.throughput_mean * *r.delay_mean / (n * rbar) - 1.0) < 3.0 * rse);
    }
}

TEST_CASE("capped IR counts failed codewords as zero reward") {
  SimConfig c;
  c.scheme = SchemeKind::IncrementalRedundancy;
  c.n_users = 4;
  c.rate_target = 50.0;
  c.attempt_cap = 1;
  c.iterations = 500;
  const auto r = estimate(c);
  CHECK(*r.throughput_mean == 0.0);
  CHECK(*r.delay_mean == 1.0);
}

TEST_CASE("identical configs give bit-identical records for any thread count") {
  SimConfig c = static_config(8, 2, 10000);
  c.seed = 77;
  const auto a = estimate(c, RunOptions{1});
  const auto b = estimate(c, RunOptions{1});
  const auto d = estimate(c, RunOptions{4});
  CHECK(same(a, b));
  CHECK(same(a, d));
  SimConfig coop;
  coop.scheme = SchemeKind::MultigroupCooperative;
  coop.groups = 3;
  coop.n_users = 6;
  coop.iterations = 9000;
  CHECK(same(estimate(coop, RunOptions{1}), estimate(coop, RunOptions{3})));
  c.seed = 78;
  CHECK(!same(a, estimate(c)));
}

TEST_CASE("sweep over N") {
  SimConfig base = static_config(2, 2, 2000);
  base.seed = 5;
  const auto rows = run_sweep(base, SweepAxis::N, {2, 4, 8});
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].config.n_users == 4);
  CHECK(rows[1].config.seed == derive_seed(5, 1));
  const auto again = run_sweep(base, SweepAxis::N, {2, 4, 8});
  for (std::size_t i = 0; i < 3; ++i) CHECK(same(rows[i].metrics, again[i].metrics));
  // adding a point leaves the earlier points untouched
  const auto longer = run_sweep(base, SweepAxis::N, {2, 4, 8, 16});
  for (std::size_t i = 0; i < 3; ++i) CHECK(same(rows[i].metrics, longer[i].metrics));
}

TEST_CASE("sweep over the divisors of 12") {
  SimConfig base = static_config(12, 1, 500);
  base.metrics = MetricsSelection::Throughput;
  const auto rows = run_sweep(base, SweepAxis::Alpha, {1, 2, 3, 4, 6, 12});
  CHECK(rows.size() == 6);
  for (const auto& r : rows) CHECK(r.metrics.analytic_throughput.has_value());
}

TEST_CASE("worst-user throughput grows with the antenna count") {
  SimConfig base = static_config(16, 1, 20000);
  base.metrics = MetricsSelection::Throughput;
  const auto rows = run_sweep(base, SweepAxis::L, {1, 2, 4});
  CHECK(*rows[0].metrics.throughput_mean < *rows[1].metrics.throughput_mean);
  CHECK(*rows[1].metrics.throughput_mean < *rows[2].metrics.throughput_mean);
  for (const auto& r : rows)
    CHECK(std::abs(*r.metrics.throughput_mean - *r.metrics.analytic_throughput) < 4.0 * *r.metrics.throughput_se);
}

TEST_CASE("invalid sweep values name the value") {
  SimConfig base = static_config(12, 1, 100);
  try {
    run_sweep(base, SweepAxis::Alpha, {1, 5});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
    CHECK(std::string(e.what()).find("alpha=5") != std::string::npos);
  }
  CHECK_THROWS_AS(run_sweep(base, SweepAxis::N, {2.5}), Error);
  CHECK_THROWS_AS(run_sweep(base, SweepAxis::P, {-1.0}), Error);
}

TEST_CASE("scheme and parameter mismatches are rejected") {
  SimConfig c;
  c.groups = 2;  // single-group static scheme
  CHECK_THROWS_AS(estimate(c), Error);
  c.groups = 1;
  c.scheme = SchemeKind::Cooperative;
  c.n_users = 7;
  CHECK_THROWS_AS(estimate(c), Error);
  c.scheme = SchemeKind::Static;
  c.n_users = 9;
  c.alpha = AlphaSpec::median();
  CHECK_THROWS_AS(estimate(c), Error);
}

TEST_CASE("analytic and scaling fields") {
  SimConfig c = static_config(10, 2, 100);
  auto r = estimate(c);
  CHECK(*r.analytic_throughput == doctest::Approx(static_throughput_closed_form(10, 2, 1.0)));
  CHECK(*r.predicted_scaling_value == 10.0);
  c.metrics = MetricsSelection::Delay;
  r = estimate(c);
  CHECK(!r.throughput_mean);
  CHECK(*r.predicted_scaling_value == doctest::Approx(252.0));

  SimConfig mg;
  mg.scheme = SchemeKind::MultigroupStatic;
  mg.groups = 4;
  mg.n_users = 30;
  mg.iterations = 100;
  CHECK(*estimate(mg).analytic_throughput == doctest::Approx(multigroup_worst_throughput(30, 4, 1.0)));

  SimConfig coop;
  coop.scheme = SchemeKind::Cooperative;
  coop.iterations = 100;
  r = estimate(coop);
  CHECK(!r.analytic_throughput);
  CHECK(*r.predicted_scaling_value == 10.0);

  SimConfig odd = static_config(12, 3, 100);
  CHECK(!estimate(odd).predicted_scaling_value);
}

TEST_CASE("exponential-server rate model for static delay") {
  SimConfig c = static_config(1, 1, 50000);
  c.metrics = MetricsSelection::Delay;
  c.rate_model = {RateModelSpec::Mode::ExponentialFixed, 2.5};
  CHECK(*estimate(c).delay_mean == doctest::Approx(3.5).epsilon(0.01));
  c.rate_model = {RateModelSpec::Mode::ExponentialDerived, 0.0};
  const double mu = 1.0 / static_mean_rate(1, 1, 1.0);
  CHECK(*estimate(c).delay_mean == doctest::Approx(1.0 + mu).epsilon(0.01));
}

}
