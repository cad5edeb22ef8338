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

#include "mcsched/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "mcsched/analytic.hpp"
#include "mcsched/error.hpp"
#include "mcsched/queueing.hpp"
#include "mcsched/rng.hpp"
#include "mcsched/simcore.hpp"

namespace mcsched {

namespace {

template <class... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[200];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Worst ratio |err| / tolerance seen so far, with its description.
struct Worst {
  double ratio = 0.0;
  std::string what;
  void see(double err, double tol, const std::string& where) {
    const double r = std::isfinite(err) ? err / tol : INFINITY;
    if (r >= ratio || what.empty()) {
      ratio = r;
      what = where;
    }
  }
  bool ok() const { return ratio <= 1.0; }
};

std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> d;
  for (unsigned a = 1; a <= n; ++a)
    if (n % a == 0) d.push_back(a);
  return d;
}

VerifyCheck check_ei(const VerifyOptions& o) {
  const std::function<double(double)> ei = o.ei ? o.ei : [](double x) { return expint_ei(x); };
  boost::math::quadrature::exp_sinh<double> integrator;
  Worst w;
  for (double x : {0.1, 1.0, 5.0, 20.0, 50.0}) {
    // Ei(-x) = -\int_0^inf e^{-(x+u)} / (x+u) du
    const double oracle =
        -integrator.integrate([x](double u) { return std::exp(-(x + u)) / (x + u); }, 1e-14);
    const double err = std::abs(ei(-x) - oracle);
    w.see(err, 1e-10, fmt("x=%g |Ei(-x) - quadrature| = %.3g (tol 1e-10)", x, err));
  }
  return {"ei", w.ok(), w.what};
}

VerifyCheck check_closed_form(const VerifyOptions&) {
  Worst w;
  for (unsigned n = 1; n <= 32; ++n)
    for (unsigned a : divisors(n))
      for (double p : {0.1, 1.0, 10.0}) {
        const double cf = static_throughput_closed_form(n, a, p);
        const double q = static_throughput_quadrature(n, a, p);
        const double rel = std::abs(cf - q) / q;
        w.see(rel, 1e-6,
              "N=" + std::to_string(n) + " alpha=" + std::to_string(a) +
                  fmt(" P=%g relative error %.3g (tol 1e-6)", p, rel));
      }
  for (unsigned n : {2u, 8u, 32u})
    for (unsigned g : {2u, 5u}) {
      const double mw = multigroup_worst_throughput(n, g, 1.0);
      const double mb = multigroup_best_throughput(n, g, 1.0);
      const double rw = std::abs(mw - static_throughput_quadrature(n, 1, 1.0, g)) / mw;
      const double rb = std::abs(mb - static_throughput_quadrature(n, n, 1.0, g)) / mb;
      const std::string tag = "N=" + std::to_string(n) + " G=" + std::to_string(g);
      w.see(rw, 1e-6, tag + fmt(" best-among-worst relative error %.3g", rw));
      w.see(rb, 1e-6, tag + fmt(" best-among-best relative error %.3g", rb));
    }
  return {"closed-form", w.ok(), w.what};
}

// Expected draws from `remaining` (sorted per-queue outstanding services)
// by first-step analysis on the absorbing chain.
double markov_trials(std::vector<unsigned> remaining, double q,
                     std::map<std::vector<unsigned>, double>& memo) {
  std::sort(remaining.begin(), remaining.end());
  if (remaining.back() == 0) return 0.0;
  if (auto it = memo.find(remaining); it != memo.end()) return it->second;
  double active = 0.0, next = 0.0;
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    if (remaining[i] == 0) continue;
    active += 1.0;
    auto s = remaining;
    --s[i];
    next += markov_trials(s, q, memo);
  }
  const double e = (q + next) / active;
  memo.emplace(remaining, e);
  return e;
}

VerifyCheck check_coupon(const VerifyOptions& o) {
  Worst w;
  for (unsigned q = 1; q <= 10; ++q)
    for (unsigned a = 1; a <= std::min(3u, q); ++a)
      for (unsigned m = 1; m <= 3; ++m) {
        std::map<std::vector<unsigned>, double> memo;
        const double chain = markov_trials(std::vector<unsigned>(a, m), q, memo);
        const double integral = coupon_collector_expected_trials(q, a, m);
        const double rel = std::abs(integral - chain) / chain;
        w.see(rel, 1e-4,
              "Q=" + std::to_string(q) + " alpha=" + std::to_string(a) + " m=" +
                  std::to_string(m) + fmt(" integral vs Markov chain %.3g (tol %g)", rel, 1e-4));
      }
  std::uint64_t index = 0;
  for (unsigned n = 2; n <= 8; n += 2)
    for (unsigned a : {1u, 2u, n})
      for (unsigned g : {1u, 2u}) {
        const std::uint64_t q = queue_universe(n, g, a);
        Rng rng = make_stream(derive_seed(o.seed, index++), StreamTag::Verify, 0);
        const int runs = 20000;
        double sum = 0.0;
        for (int i = 0; i < runs; ++i) sum += static_cast<double>(simulate_coupon_trials(q, a, 1, rng));
        const double expect = coupon_collector_expected_trials(static_cast<double>(q), a, 1);
        const double rel = std::abs(sum / runs - expect) / expect;
        w.see(rel, 0.02,
              "N=" + std::to_string(n) + " alpha=" + std::to_string(a) + " G=" +
                  std::to_string(g) + fmt(" simulated trials off by %.3g (tol %g)", rel, 0.02));
      }
  return {"coupon", w.ok(), w.what};
}

VerifyCheck check_mc_throughput(const VerifyOptions& o) {
  Worst w;
  RunOptions ro{o.threads};
  std::uint64_t index = 0;
  for (unsigned n : {2u, 4u, 8u, 16u})
    for (unsigned a : {1u, 2u, n}) {
      SimConfig c;
      c.n_users = n;
      c.alpha = AlphaSpec::explicit_value(a);
      c.iterations = 100000;
      c.seed = derive_seed(o.seed, 100 + index++);
      const MetricsRecord r = estimate_throughput(c, ro);
      const double cf = static_throughput_closed_form(n, a, 1.0);
      const double tol = std::max(3.0 * *r.throughput_se, 1e-3 * cf);
      const double err = std::abs(*r.throughput_mean - cf);
      w.see(err, tol,
            "N=" + std::to_string(n) + " alpha=" + std::to_string(a) +
                fmt(" |MC - closed form| = %.3g (tol %.3g)", err, tol));
    }
  return {"mc-throughput", w.ok(), w.what};
}

VerifyCheck check_renewal(const VerifyOptions& o) {
  Worst w;
  RunOptions ro{o.threads};
  std::uint64_t index = 0;
  for (unsigned n : {4u, 16u})
    for (double rbar : {0.5, 2.0}) {
      SimConfig c;
      c.scheme = SchemeKind::IncrementalRedundancy;
      c.n_users = n;
      c.rate_target = rbar;
      c.iterations = 20000;
      c.seed = derive_seed(o.seed, 200 + index++);
      const MetricsRecord t = estimate_throughput(c, ro);
      const MetricsRecord d = estimate_delay(c, ro);
      const double product = *t.throughput_mean * *d.delay_mean;
      const double target = n * rbar;
      const double rse = std::hypot(*t.throughput_se / *t.throughput_mean, *d.delay_se / *d.delay_mean);
      const double rel = std::abs(product / target - 1.0);
      w.see(rel, 3.0 * rse,
            "N=" + std::to_string(n) + fmt(" Rbar=%g throughput*delay/(N Rbar) - 1 = %.3g (tol %.3g)", rbar, rel, 3.0 * rse));
    }
  return {"renewal", w.ok(), w.what};
}

VerifyCheck check_service(const VerifyOptions& o) {
  // alpha = 1, one queue served every slot, exponential server with mu C = 1.
  StaticDelayParams p;
  p.n_users = 1;
  p.alpha = 1;
  p.packet_nats = 1.0;
  p.coherence = 1.0;
  p.model = RateModel::exponential_server(1.0);
  const ServiceLaw law{1.0, 1.0};
  const int runs = 100000;
  Rng rng = make_stream(derive_seed(o.seed, 300), StreamTag::Verify, 0);
  std::map<std::uint64_t, double> hist;
  double sum = 0.0;
  for (int i = 0; i < runs; ++i) {
    const std::uint64_t k = tagged_delay_static(p, rng);
    hist[k] += 1.0;
    sum += static_cast<double>(k);
  }
  // Bins k = 1.. while the expected count stays >= 5, the tail pooled.
  double chi2 = 0.0, covered = 0.0, observed_head = 0.0;
  int bins = 0;
  for (std::uint64_t k = 1;; ++k) {
    const double e = runs * service_time_pmf(law, k);
    if (e < 5.0 || runs - covered - e < 5.0) break;
    const double obs = hist.count(k) ? hist[k] : 0.0;
    chi2 += (obs - e) * (obs - e) / e;
    covered += e;
    observed_head += obs;
    ++bins;
  }
  const double tail_e = runs - covered;
  const double tail_o = runs - observed_head;
  chi2 += (tail_o - tail_e) * (tail_o - tail_e) / tail_e;
  const boost::math::chi_squared dist(bins);  // bins + 1 cells, one constraint
  const double pvalue = boost::math::cdf(boost::math::complement(dist, chi2));
  const double mean = sum / runs;
  const double rel = std::abs(mean / 2.0 - 1.0);
  const bool ok = pvalue > 0.01 && rel < 0.01;
  return {"service", ok,
          fmt("chi-square p = %.3g (need > 0.01), mean delay %.5g vs 1 + mu C = 2 (rel %.3g, tol 0.01)",
              pvalue, mean, rel)};
}

}  // namespace

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = {"ei",      "closed-form", "coupon",
                                                 "mc-throughput", "renewal", "service"};
  return names;
}

std::vector<VerifyCheck> run_verify(const VerifyOptions& o) {
  using Fn = VerifyCheck (*)(const VerifyOptions&);
  const std::vector<std::pair<std::string, Fn>> all = {
      {"ei", check_ei},           {"closed-form", check_closed_form},
      {"coupon", check_coupon},   {"mc-throughput", check_mc_throughput},
      {"renewal", check_renewal}, {"service", check_service}};
  std::vector<VerifyCheck> out;
  for (const auto& [name, fn] : all) {
    if (!o.filter.empty() && name.find(o.filter) == std::string::npos) continue;
    const auto t0 = std::chrono::steady_clock::now();
    VerifyCheck c;
    try {
      c = fn(o);
    } catch (const std::exception& e) {
      c = {name, false, std::string("error: ") + e.what()};
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(c));
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "no verify check matches '" + o.filter + "'");
  return out;
}

}  // namespace mcsched
