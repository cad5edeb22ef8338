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

#include <cstddef>
#include <optional>
#include <vector>

#include "mcsched/rng.hpp"

namespace mcsched {

/// Row-major N x N matrix of inter-user power gains; entry (k, i) is the gain
/// from user k to user i. The diagonal is zero and never read.
class GainMatrix {
 public:
  GainMatrix() = default;
  explicit GainMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t from, std::size_t to) const { return data_[from * n_ + to]; }
  double& operator()(std::size_t from, std::size_t to) { return data_[from * n_ + to]; }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Fading state of one coherence interval.
struct ChannelRealization {
  /// bs_gains[g][i]: base-station power gain to user i of group g.
  std::vector<std::vector<double>> bs_gains;
  /// Per-group inter-user gains; present only for cooperative schemes.
  std::optional<std::vector<GainMatrix>> interuser_gains;
};

/// Coherence interval in slot units, either fixed or shrinking like
/// c / log log(NG).
struct CoherencePolicy {
  enum class Mode { Fixed, Scaled };
  Mode mode = Mode::Fixed;
  double value = 1.0;  // Tc for Fixed, c for Scaled

  static CoherencePolicy fixed(double tc) { return {Mode::Fixed, tc}; }
  static CoherencePolicy scaled(double c) { return {Mode::Scaled, c}; }
};

/// n unit-mean exponential power gains (Rayleigh amplitude).
std::vector<double> draw_rayleigh_gains(std::size_t n, Rng& rng);

/// n normalized chi-square gains with 2L degrees of freedom: each is the mean
/// of L unit-mean exponentials (equal power split over L antennas). L = 1
/// consumes the stream exactly like draw_rayleigh_gains.
std::vector<double> draw_chisquare_gains(std::size_t n, unsigned antennas, Rng& rng);

/// In-place variant used by the simulation loops to avoid reallocation.
void fill_chisquare_gains(std::vector<double>& out, unsigned antennas, Rng& rng);

/// i.i.d. exponential(1) off-diagonal entries; no symmetry imposed.
GainMatrix draw_interuser_gains(std::size_t n, Rng& rng);
void fill_interuser_gains(GainMatrix& out, Rng& rng);

/// Tc for a system of N users per group and G groups. The scaled mode floors
/// NG at 16 so that log log stays positive.
double coherence_interval(const CoherencePolicy& policy, std::size_t n_users,
                          std::size_t groups);

}  // namespace mcsched
