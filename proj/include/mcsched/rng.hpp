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

#include <cmath>
#include <cstdint>
#include <random>

namespace mcsched {

/// The random stream threaded through every draw.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for stream `index` under `parent`. Children of distinct indices
/// are unrelated, and adding a child never changes another child's seed.
constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                    std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Named sub-streams of one experiment seed.
enum class StreamTag : std::uint64_t {
  Throughput = 1,
  Delay = 2,
  Verify = 3,
};

inline Rng make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t block) {
  return Rng(derive_seed(derive_seed(seed, static_cast<std::uint64_t>(tag)), block));
}

/// Number of Bernoulli(p) failures before the first success.
///
/// std::geometric_distribution evaluates log(1 - p), which rounds to zero
/// once p drops below ~1e-16; the log1p form stays exact for the tiny hit
/// probabilities of large coupled-queue universes.
inline std::uint64_t draw_geometric_failures(double p, Rng& rng) {
  if (p >= 1.0) return 0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double u = unif(rng);
  while (u <= 0.0) u = unif(rng);
  double k = std::floor(std::log(u) / std::log1p(-p));
  if (k >= 1.8e19) return UINT64_MAX / 2;
  return static_cast<std::uint64_t>(k);
}

}  // namespace mcsched
