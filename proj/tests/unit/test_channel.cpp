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

#include <algorithm>
#include <cmath>

#include "mcsched/channel.hpp"
#include "mcsched/error.hpp"

using namespace mcsched;

TEST_SUITE("channel") {

TEST_CASE("rayleigh draws are reproducible and nonnegative") {
  Rng a(7), b(7);
  const auto x = draw_rayleigh_gains(3, a);
  const auto y = draw_rayleigh_gains(3, b);
  REQUIRE(x.size() == 3);
  CHECK(x == y);
  for (double g : x) CHECK(g >= 0.0);
}

TEST_CASE("rayleigh rejects n = 0") {
  Rng r(1);
  CHECK_THROWS_AS(draw_rayleigh_gains(0, r), Error);
  try {
    draw_rayleigh_gains(0, r);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("rayleigh power gains are unit-mean exponential") {
  Rng r(11);
  const auto x = draw_rayleigh_gains(1000000, r);
  double sum = 0.0, below = 0.0;
  for (double g : x) {
    sum += g;
    below += g <= 0.5;
  }
  CHECK(sum / x.size() == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::abs(below / x.size() - (1.0 - std::exp(-0.5))) < 0.005);
}

TEST_CASE("Kolmogorov-Smirnov distance to 1 - e^-x is small") {
  Rng r(12);
  auto x = draw_rayleigh_gains(100000, r);
  std::sort(x.begin(), x.end());
  double d = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = -std::expm1(-x[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  CHECK(d < 0.01);
}

TEST_CASE("chi-square with L = 1 consumes the stream like rayleigh") {
  Rng a(3), b(3);
  CHECK(draw_chisquare_gains(50, 1, a) == draw_rayleigh_gains(50, b));
  CHECK(a() == b());
}

TEST_CASE("chi-square L = 2 matches 1 - 3 e^-2 at x = 1") {
  Rng r(5);
  const auto x = draw_chisquare_gains(1000000, 2, r);
  double below = 0.0;
  for (double g : x) below += g <= 1.0;
  CHECK(std::abs(below / x.size() - (1.0 - 3.0 * std::exp(-2.0))) < 0.005);
}

TEST_CASE("chi-square L = 4 keeps unit mean") {
  Rng r(6);
  const auto x = draw_chisquare_gains(1000000, 4, r);
  double sum = 0.0;
  for (double g : x) sum += g;
  CHECK(sum / x.size() == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("chi-square rejects L = 0") {
  Rng r(1);
  CHECK_THROWS_AS(draw_chisquare_gains(4, 0, r), Error);
}

TEST_CASE("inter-user gains: zero diagonal, unit mean, no symmetry") {
  Rng r(9);
  const auto two = draw_interuser_gains(2, r);
  CHECK(two(0, 0) == 0.0);
  CHECK(two(1, 1) == 0.0);
  CHECK(two(0, 1) != two(1, 0));

  double sum = 0.0;
  std::size_t count = 0;
  GainMatrix m(11);
  while (count < 1000000) {
    fill_interuser_gains(m, r);
    for (std::size_t i = 0; i < 11; ++i)
      for (std::size_t j = 0; j < 11; ++j)
        if (i != j) {
          sum += m(i, j);
          ++count;
        }
  }
  CHECK(sum / count == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(draw_interuser_gains(1, r), Error);
}

TEST_CASE("coherence interval") {
  CHECK(coherence_interval(CoherencePolicy::fixed(1.0), 7, 3) == 1.0);
  CHECK(coherence_interval(CoherencePolicy::fixed(2.5), 100, 1) == 2.5);
  // 1 / log log 16 and 1 / log log 1e6
  CHECK(coherence_interval(CoherencePolicy::scaled(1.0), 16, 1) ==
        doctest::Approx(0.980602274416971).epsilon(1e-12));
  CHECK(coherence_interval(CoherencePolicy::scaled(1.0), 1000, 1000) ==
        doctest::Approx(0.380837489249240).epsilon(1e-12));
  // floored at NG = 16
  CHECK(coherence_interval(CoherencePolicy::scaled(1.0), 2, 1) ==
        coherence_interval(CoherencePolicy::scaled(1.0), 4, 4));
  double prev = INFINITY;
  for (std::size_t ng = 16; ng < 100000; ng *= 3) {
    const double tc = coherence_interval(CoherencePolicy::scaled(2.0), ng, 1);
    CHECK(tc > 0.0);
    CHECK(tc <= prev);
    prev = tc;
  }
  CHECK_THROWS_AS(coherence_interval(CoherencePolicy::fixed(0.0), 4, 1), Error);
  CHECK_THROWS_AS(coherence_interval(CoherencePolicy::scaled(-1.0), 4, 1), Error);
}

}
