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
#include "mcsched/verify.hpp"

using namespace mcsched;

TEST_SUITE("verify") {

TEST_CASE("filter selects by substring") {
  VerifyOptions o;
  o.filter = "coupon";
  const auto checks = run_verify(o);
  REQUIRE(checks.size() == 1);
  CHECK(checks[0].name == "coupon");
  CHECK(checks[0].passed);
}

TEST_CASE("a corrupted Ei is caught") {
  VerifyOptions o;
  o.filter = "ei";
  CHECK(run_verify(o)[0].passed);
  o.ei = [](double x) { return expint_ei(x) * (1.0 + 1e-8); };
  const auto bad = run_verify(o);
  REQUIRE(bad.size() == 1);
  CHECK_FALSE(bad[0].passed);
  CHECK(bad[0].detail.find("x=") != std::string::npos);
}

TEST_CASE("a filter matching nothing is an error") {
  VerifyOptions o;
  o.filter = "no-such-check";
  try {
    run_verify(o);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("every check passes") {
  const auto checks = run_verify();
  REQUIRE(checks.size() == verify_check_names().size());
  for (std::size_t i = 0; i < checks.size(); ++i) {
    INFO(checks[i].name << ": " << checks[i].detail);
    CHECK(checks[i].name == verify_check_names()[i]);
    CHECK(checks[i].passed);
  }
}

}
