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

#include "mcsched/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "expint_impl.hpp"
#include "mcsched/error.hpp"

namespace mcsched {

namespace {

namespace bmp = boost::multiprecision;
using Mp50 = bmp::number<bmp::cpp_bin_float<50>, bmp::et_off>;
using Mp120 = bmp::number<bmp::cpp_bin_float<120>, bmp::et_off>;
using Mp400 = bmp::number<bmp::cpp_bin_float<400>, bmp::et_off>;

constexpr double kDoubleSeriesLimit = 6.0;

// Series/CF switch per precision tier. The series loses ~0.87 a digits to
// cancellation, the continued fraction slows down for small a.
template <class Real>
constexpr double series_limit() {
  if constexpr (std::is_same_v<Real, Mp50>) return 6.0;
  else if constexpr (std::is_same_v<Real, Mp120>) return 12.0;
  else return 40.0;
}

// Significant digits left after the series cancellation at the switch point.
template <class Real>
constexpr double effective_digits() {
  if constexpr (std::is_same_v<Real, Mp50>) return 44.0;
  else if constexpr (std::is_same_v<Real, Mp120>) return 108.0;
  else return 360.0;
}

template <class Real>
Real mp_scaled_ei(unsigned j, const Real& inv_power) {
  // e^{j/P} Ei(-j/P)
  return -detail::scaled_e1<Real>(Real(j) * inv_power, series_limit<Real>());
}

// Runs `f` (a generic lambda taking a Real tag) in the lowest precision tier
// whose digits cover `magnitude_log10` (log10 of the largest summand) plus the
// cancellation observed in the result.
template <class F>
double evaluate_extended(double magnitude_log10, const char* what, F&& f) {
  constexpr double kKeep = 14.0;
  auto attempt = [&](auto tag, double eff, double& out) {
    using Real = decltype(tag);
    if (magnitude_log10 + kKeep > eff) return false;
    const Real r = f(tag);
    out = static_cast<double>(r);
    const double lost = magnitude_log10 - std::log10(std::max(std::abs(out), 1e-300));
    return lost + kKeep <= eff;
  };
  double v = 0.0;
  if (attempt(Mp50{}, effective_digits<Mp50>(), v)) return v;
  if (attempt(Mp120{}, effective_digits<Mp120>(), v)) return v;
  if (attempt(Mp400{}, effective_digits<Mp400>(), v)) return v;
  fail(ErrorCode::Unsupported,
       std::string(what) + ": alternating sum too ill-conditioned; use the quadrature path");
}

double log_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

template <class F>
double integrate_half_line(F&& f) {
  using boost::math::quadrature::gauss_kronrod;
  constexpr double kTol = 1e-13;
  return gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 20, kTol) +
         gauss_kronrod<double, 31>::integrate(f, 1.0, std::numeric_limits<double>::infinity(), 20,
                                              kTol);
}

}  // namespace

double scaled_e1(double a) {
  if (!(a > 0.0)) fail(ErrorCode::OutOfDomain, "scaled_e1: argument must be positive");
  if (std::isinf(a)) return 0.0;
  return detail::scaled_e1<double>(a, kDoubleSeriesLimit);
}

double expint_ei(double x) {
  if (!(x < 0.0)) fail(ErrorCode::OutOfDomain, "expint_ei: argument must be negative");
  const double a = -x;
  if (a < kDoubleSeriesLimit) return -detail::e1_series<double>(a);
  return -std::exp(-a) * detail::scaled_e1_cf<double>(a);
}

std::uint64_t binomial(unsigned n, unsigned k) {
  require(k <= n, "binomial: k must not exceed n");
  k = std::min(k, n - k);
  unsigned __int128 c = 1;
  for (unsigned i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > std::numeric_limits<std::uint64_t>::max())
      fail(ErrorCode::Unsupported, "binomial: C(" + std::to_string(n) + "," + std::to_string(k) +
                                       ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(c);
}

double log_binomial(unsigned n, unsigned k) {
  require(k <= n, "log_binomial: k must not exceed n");
  if (n <= 60) return std::log(static_cast<double>(binomial(n, k)));
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double chisquare_survival(unsigned antennas, double x) {
  require(antennas >= 1, "chisquare: antenna count must be >= 1");
  require(x >= 0.0, "chisquare: x must be nonnegative");
  const double y = antennas * x;
  if (y >= antennas) {
    // e^{-y} sum_{k<L} y^k / k!
    double term = 1.0, sum = 1.0;
    for (unsigned k = 1; k < antennas; ++k) {
      term *= y / k;
      sum += term;
    }
    return std::exp(-y) * sum;
  }
  return 1.0 - chisquare_cdf(antennas, x);
}

double chisquare_cdf(unsigned antennas, double x) {
  require(antennas >= 1, "chisquare: antenna count must be >= 1");
  require(x >= 0.0, "chisquare: x must be nonnegative");
  const double y = antennas * x;
  if (y == 0.0) return 0.0;
  if (y < antennas) {
    // Upper Poisson tail e^{-y} sum_{k>=L} y^k / k!, terms decreasing.
    double log_term = antennas * std::log(y) - y - log_factorial(antennas);
    double term = std::exp(log_term);
    double sum = 0.0;
    for (unsigned k = antennas; term > 0.0; ++k) {
      sum += term;
      if (term < 1e-18 * sum) break;
      term *= y / (k + 1);
    }
    return sum;
  }
  return 1.0 - chisquare_survival(antennas, x);
}

namespace {

void check_order_spec(const OrderStatSpec& s) {
  require(s.n_users >= 1, "order statistic: N must be >= 1");
  require(s.position >= 1 && s.position <= s.n_users, "order statistic: position must be in [1, N]");
  require(s.groups >= 1, "order statistic: G must be >= 1");
}

// Binomial tail sum_{k=lo}^{hi} C(n,k) p^k q^{n-k} of nonnegative terms, so
// both the CDF and the survival are accurate without complementing.
double binomial_tail(unsigned n, unsigned lo, unsigned hi, double x, unsigned antennas) {
  require(x >= 0.0, "order statistic: x must be nonnegative");
  const double p = (antennas == 1) ? -std::expm1(-x) : chisquare_cdf(antennas, x);
  const double q = (antennas == 1) ? std::exp(-x) : chisquare_survival(antennas, x);
  const double lp = std::log(p);
  const double lq = (antennas == 1) ? -x : std::log(q);
  double sum = 0.0;
  for (unsigned k = lo; k <= hi; ++k) {
    const double lk = (k == 0 ? 0.0 : k * lp) + (k == n ? 0.0 : (n - k) * lq);
    sum += std::exp(log_binomial(n, k) + lk);
  }
  return std::min(sum, 1.0);
}

}  // namespace

namespace {

// Pr(k-th smallest <= x) for one group. The smaller of the two tails is summed
// directly and the other taken as its complement, which keeps the result
// monotone in x near 0 and 1.
std::pair<double, double> order_stat_tails(const OrderStatSpec& spec, double x, unsigned antennas) {
  const double f = binomial_tail(spec.n_users, spec.position, spec.n_users, x, antennas);
  if (f <= 0.5) return {f, 1.0 - f};
  const double s = binomial_tail(spec.n_users, 0, spec.position - 1, x, antennas);
  return {1.0 - s, s};
}

}  // namespace

double order_stat_cdf(const OrderStatSpec& spec, double x, unsigned antennas) {
  check_order_spec(spec);
  const double f = order_stat_tails(spec, x, antennas).first;
  if (spec.groups == 1) return f;
  return std::pow(f, static_cast<double>(spec.groups));
}

double order_stat_survival(const OrderStatSpec& spec, double x, unsigned antennas) {
  check_order_spec(spec);
  const double s = order_stat_tails(spec, x, antennas).second;
  if (spec.groups == 1) return s;
  if (s >= 1.0) return 1.0;
  // 1 - (1 - s)^G
  return -std::expm1(static_cast<double>(spec.groups) * std::log1p(-s));
}

namespace {

void check_static_args(unsigned n, unsigned alpha, double power) {
  require(n >= 1, "static scheduler: N must be >= 1");
  require(alpha >= 1 && alpha <= n && n % alpha == 0,
          "static scheduler: alpha=" + std::to_string(alpha) + " does not divide N=" +
              std::to_string(n));
  require(power > 0.0 && std::isfinite(power), "static scheduler: P must be positive");
}

}  // namespace

double static_throughput_closed_form(unsigned n, unsigned alpha, double power) {
  check_static_args(n, alpha, power);
  const unsigned first = n - n / alpha + 1;  // target position
  const double hmax = scaled_e1(1.0 / power);
  const double magnitude =
      (first <= n - 1 ? n * std::log10(3.0) : n * std::log10(2.0)) + std::log10(hmax);
  const double eval = evaluate_extended(magnitude, "static_throughput_closed_form", [&](auto tag) {
    using Real = decltype(tag);
    const Real inv_p = Real(1) / Real(power);
    std::vector<Real> h(n + 1);
    for (unsigned j = 1; j <= n; ++j) h[j] = mp_scaled_ei<Real>(j, inv_p);

    Real sum1 = 0;
    Real c = 1;  // C(n, i)
    for (unsigned i = 1; i <= n; ++i) {
      c = c * Real(n - i + 1) / Real(i);
      sum1 += (i % 2 ? -c : c) * h[i];
    }
    Real sum2 = 0;
    for (unsigned k = first; k + 1 <= n; ++k) {
      Real inner = 0;
      Real ck = 1;  // C(k, i)
      for (unsigned i = 0; i <= k; ++i) {
        if (i > 0) ck = ck * Real(k - i + 1) / Real(i);
        inner += (i % 2 ? -ck : ck) * h[n - k + i];
      }
      Real cnk = 1;
      for (unsigned i = 0; i < std::min(k, n - k); ++i) cnk = cnk * Real(n - i) / Real(i + 1);
      sum2 += cnk * inner;
    }
    return Real(n) / Real(alpha) * (sum1 + sum2);
  });
  return eval;
}

double static_throughput_quadrature(unsigned n, unsigned alpha, double power, unsigned groups,
                                    unsigned antennas) {
  check_static_args(n, alpha, power);
  require(groups >= 1, "static scheduler: G must be >= 1");
  require(antennas >= 1, "static scheduler: L must be >= 1");
  const OrderStatSpec spec{n, n - n / alpha + 1, groups};
  // E[log(1 + XP)] = \int P (1 - F(x)) / (1 + xP) dx
  auto integrand = [&](double x) {
    return power * order_stat_survival(spec, x, antennas) / (1.0 + x * power);
  };
  return static_cast<double>(n / alpha) * integrate_half_line(integrand);
}

double static_mean_rate(unsigned n, unsigned alpha, double power, unsigned groups,
                        unsigned antennas) {
  return static_throughput_quadrature(n, alpha, power, groups, antennas) /
         static_cast<double>(n / alpha);
}

double multigroup_worst_throughput(unsigned n, unsigned groups, double power) {
  require(n >= 1 && groups >= 1, "multigroup_worst_throughput: N and G must be >= 1");
  require(power > 0.0 && std::isfinite(power), "multigroup_worst_throughput: P must be positive");
  const double magnitude = groups * std::log10(2.0) + std::log10(scaled_e1(n / power));
  return evaluate_extended(magnitude, "multigroup_worst_throughput", [&](auto tag) {
    using Real = decltype(tag);
    const Real inv_p = Real(1) / Real(power);
    Real sum = 0;
    Real c = 1;
    for (unsigned k = 1; k <= groups; ++k) {
      c = c * Real(groups - k + 1) / Real(k);
      sum += (k % 2 ? -c : c) * mp_scaled_ei<Real>(n * k, inv_p);
    }
    return Real(n) * sum;
  });
}

double multigroup_best_throughput(unsigned n, unsigned groups, double power) {
  require(n >= 1 && groups >= 1, "multigroup_best_throughput: N and G must be >= 1");
  require(power > 0.0 && std::isfinite(power), "multigroup_best_throughput: P must be positive");
  const unsigned long long total = static_cast<unsigned long long>(n) * groups;
  if (total > kMaxBestClosedFormUsers)
    fail(ErrorCode::Unsupported, "multigroup_best_throughput: NG=" + std::to_string(total) +
                                     " exceeds the closed-form cap of " +
                                     std::to_string(kMaxBestClosedFormUsers));
  const unsigned ng = static_cast<unsigned>(total);
  const double magnitude = ng * std::log10(2.0) + std::log10(scaled_e1(1.0 / power));
  return evaluate_extended(magnitude, "multigroup_best_throughput", [&](auto tag) {
    using Real = decltype(tag);
    const Real inv_p = Real(1) / Real(power);
    Real sum = 0;
    Real c = 1;
    for (unsigned k = 1; k <= ng; ++k) {
      c = c * Real(ng - k + 1) / Real(k);
      sum += (k % 2 ? -c : c) * mp_scaled_ei<Real>(k, inv_p);
    }
    return sum;
  });
}

double service_time_pmf(const ServiceLaw& law, std::uint64_t k) {
  require(law.mu > 0.0 && law.capacity > 0.0, "service_time_pmf: mu and C must be positive");
  require(k >= 1, "service_time_pmf: k must be >= 1 (no packet completes in zero slots)");
  const double lambda = law.mu * law.capacity;
  if (lambda == 0.0) return k == 1 ? 1.0 : 0.0;
  const double km1 = static_cast<double>(k - 1);
  return std::exp(-lambda + km1 * std::log(lambda) - std::lgamma(km1 + 1.0));
}

double coupon_collector_expected_trials(double queues, unsigned alpha, unsigned services) {
  require(alpha >= 1, "coupon_collector: alpha must be >= 1");
  require(services >= 1, "coupon_collector: m must be >= 1");
  require(queues >= alpha, "coupon_collector: alpha must not exceed Q");
  if (alpha == 1) return queues * services;
  const double m = services;
  // S_m(t) e^{-t} = Pr(Poisson(t) < m) = Q(m, t)
  auto integrand = [&](double t) {
    const double u = boost::math::gamma_q(m, t);
    if (u >= 1.0) return 1.0;
    return -std::expm1(alpha * std::log1p(-u));
  };
  return queues * integrate_half_line(integrand);
}

double predicted_scaling(ScalingScheme scheme, Metric metric, unsigned n, unsigned groups,
                         unsigned antennas) {
  require(n >= 1 && groups >= 1 && antennas >= 1, "predicted_scaling: N, G, L must be >= 1");
  const double N = n, G = groups, L = antennas;
  const double logn = std::log(N);
  auto loglog = [](double v) {
    const double ll = v > 1.0 ? std::log(std::log(v)) : -1.0;
    if (!(ll > 0.0)) fail(ErrorCode::Unsupported, "predicted_scaling: log log of argument <= 0");
    return ll;
  };
  auto logpos = [](double v) {
    if (!(v > 1.0)) fail(ErrorCode::Unsupported, "predicted_scaling: log of argument <= 0");
    return std::log(v);
  };
  const bool thr = metric == Metric::Throughput;
  switch (scheme) {
    case ScalingScheme::Worst:
      if (thr) return antennas == 1 ? 1.0 : std::pow(N, (L - 1.0) / L);
      return N;
    case ScalingScheme::Median:
      if (thr) return N;
      require(n % 2 == 0, "predicted_scaling: median scheme needs even N");
      return std::exp(log_binomial(n, n / 2));
    case ScalingScheme::Best:
      if (thr) {
        if (antennas == 1) return loglog(N);
        return std::log(1.0 + (logn + (L - 1.0) * loglog(N)) / L);
      }
      return N * logpos(N) / loglog(N);
    case ScalingScheme::IncrementalRedundancy:
      if (thr) return N * loglog(N) / logpos(N);
      return logpos(N) / loglog(N);
    case ScalingScheme::Cooperative:
      return thr ? N : 1.0;
    case ScalingScheme::MultigroupWorst:
      if (thr) return logpos(G);
      return N * G / logpos(G);
    case ScalingScheme::MultigroupBest:
      if (thr) return loglog(N * G);
      return N * G * logpos(N) / loglog(N * G);
    case ScalingScheme::MultigroupMedian:
      if (thr) return N;
      require(n % 2 == 0, "predicted_scaling: median scheme needs even N");
      return G * std::exp(log_binomial(n, n / 2)) / loglog(G);
    case ScalingScheme::MultigroupCooperative:
      if (thr) return N;
      return G / loglog(G);
  }
  fail(ErrorCode::Unsupported, "predicted_scaling: unknown scheme");
}

}  // namespace mcsched
