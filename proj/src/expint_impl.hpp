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

// Precision-generic exponential integral kernels shared by the double API and
// the extended-precision alternating sums.

#include <cmath>
#include <limits>

#include <boost/math/constants/constants.hpp>

namespace mcsched::detail {

/// E1(a) = -gamma - ln a - sum_{n>=1} (-a)^n / (n n!), a > 0.
template <class Real>
Real e1_series(const Real& a) {
  using std::abs;
  using std::log;
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real sum = 0;
  Real term = 1;  // (-a)^n / n!
  for (unsigned n = 1; n < 100000; ++n) {
    term *= -a / n;
    const Real add = term / n;
    sum += add;
    if (abs(add) <= eps * abs(sum) && Real(n) > a) break;
  }
  return -boost::math::constants::euler<Real>() - log(a) - sum;
}

/// e^{a} E1(a) by the modified Lentz continued fraction
/// 1 / (a + 1 - 1 / (a + 3 - 4 / (a + 5 - ...))).
template <class Real>
Real scaled_e1_cf(const Real& a) {
  using std::abs;
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real tiny = std::numeric_limits<Real>::min() * 1024;
  Real b = a + 1;
  Real c = 1 / tiny;
  Real d = 1 / b;
  Real h = d;
  for (unsigned i = 1; i < 200000; ++i) {
    const Real an = -Real(i) * Real(i);
    b += 2;
    d = 1 / (an * d + b);
    c = b + an / c;
    const Real del = c * d;
    h *= del;
    if (abs(del - 1) <= eps) break;
  }
  return h;
}

/// e^{a} E1(a) choosing series below `series_limit`, continued fraction above.
template <class Real>
Real scaled_e1(const Real& a, double series_limit) {
  using std::exp;
  if (a < Real(series_limit)) return exp(a) * e1_series(a);
  return scaled_e1_cf(a);
}

}  // namespace mcsched::detail
