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
#include <functional>
#include <string>
#include <vector>

namespace mcsched {

struct VerifyOptions {
  /// Run only checks whose name contains this substring (empty = all).
  std::string filter;
  /// Ei implementation under test; defaults to expint_ei. Lets a test plant a
  /// corrupted function and watch the "ei" check fail.
  std::function<double(double)> ei;
  std::uint64_t seed = 20240601;
  unsigned threads = 0;
};

struct VerifyCheck {
  std::string name;
  bool passed = false;
  /// Largest observed deviation against its tolerance, human readable.
  std::string detail;
  double seconds = 0.0;
};

/// Check names in run order: ei, closed-form, coupon, mc-throughput,
/// renewal, service.
const std::vector<std::string>& verify_check_names();

/// Analytic-vs-oracle and analytic-vs-simulation checks. Throws
/// Error(InvalidArgument) when the filter selects nothing.
std::vector<VerifyCheck> run_verify(const VerifyOptions& options = {});

}  // namespace mcsched
