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

namespace mcsched {

/// Exponential integral Ei(x) = \int_{-inf}^{x} e^t / t dt for x < 0.
/// Power series below |x| = 6, continued fraction beyond.
double expint_ei(double x);

/// e^{a} E1(a) = -e^{a} Ei(-a) for a > 0. Finite for every a, unlike the
/// product of its unscaled factors.
double scaled_e1(double a);

/// Exact C(n, k). Throws Unsupported when the value exceeds 64 bits
/// (always representable for n <= 60).
std::uint64_t binomial(unsigned n, unsigned k);

/// log C(n, k): exact 64-bit route for n <= 60, log-gamma beyond.
double log_binomial(unsigned n, unsigned k);

/// Position `position` (1 = minimum) of N i.i.d. gains; `groups` > 1 selects
/// the best-of-G maximum of that order statistic across independent groups.
struct OrderStatSpec {
  unsigned n_users = 1;
  unsigned position = 1;
  unsigned groups = 1;
};

/// CDF of the order statistic for unit-mean exponential gains, or for
/// normalized chi-square(2L) gains when `antennas` > 1.
double order_stat_cdf(const OrderStatSpec& spec, double x, unsigned antennas = 1);

/// 1 - order_stat_cdf, evaluated without cancellation.
double order_stat_survival(const OrderStatSpec& spec, double x, unsigned antennas = 1);

/// CDF of a normalized chi-square gain with 2L degrees of freedom.
double chisquare_cdf(unsigned antennas, double x);
double chisquare_survival(unsigned antennas, double x);

/// Closed-form mean throughput of the static alpha-scheduler (nats/slot),
/// evaluated from the Ei alternating sums in extended precision. Throws
/// Unsupported when the sums would need more than ~360 significant digits.
double static_throughput_closed_form(unsigned n_users, unsigned alpha, double power);

/// General evaluator: (N/alpha) \int log(1 + xP) dF(x) by adaptive quadrature,
/// for any G and antenna count.
double static_throughput_quadrature(unsigned n_users, unsigned alpha, double power,
                                    unsigned groups = 1, unsigned antennas = 1);

/// Mean per-slot rate E[R_alpha] of the (multi-group) static scheduler.
double static_mean_rate(unsigned n_users, unsigned alpha, double power,
                        unsigned groups = 1, unsigned antennas = 1);

/// Best-among-worst users, closed form.
double multigroup_worst_throughput(unsigned n_users, unsigned groups, double power);

/// Best-among-best users, closed form; NG is capped at 1000.
inline constexpr unsigned kMaxBestClosedFormUsers = 1000;
double multigroup_best_throughput(unsigned n_users, unsigned groups, double power);

/// Shifted-Poisson service-time law of a queue served every slot under the
/// exponential-server model. `mu` is 1 / E[R]; `capacity` is S / Tc in nats.
struct ServiceLaw {
  double mu = 1.0;
  double capacity = 1.0;
};

/// Pr(X = k slots) = e^{-mu C} (mu C)^{k-1} / (k-1)!, k >= 1.
double service_time_pmf(const ServiceLaw& law, std::uint64_t k);

/// Expected uniform draws among Q queues until each of `alpha` designated
/// queues has been drawn `services` times:
///   Q \int_0^inf [1 - (1 - S_m(t) e^{-t})^alpha] dt.
double coupon_collector_expected_trials(double queues, unsigned alpha, unsigned services);

enum class ScalingScheme {
  Worst,
  Median,
  Best,
  IncrementalRedundancy,
  Cooperative,
  MultigroupWorst,
  MultigroupMedian,
  MultigroupBest,
  MultigroupCooperative,
};

enum class Metric { Throughput, Delay };

/// Growth-order expression with unit constants, for ratio and regression
/// checks only. Two-sided bounds report the lower-bound expression.
/// Throws Unsupported for pairs without a result or where the expression is
/// not positive (e.g. log log N <= 0).
double predicted_scaling(ScalingScheme scheme, Metric metric, unsigned n_users,
                         unsigned groups = 1, unsigned antennas = 1);

}  // namespace mcsched
