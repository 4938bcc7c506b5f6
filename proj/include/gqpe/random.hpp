/*
 * Copyright 2026 The gqpe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GQPE_RANDOM_HPP_
#define GQPE_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace gqpe {

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream seed for round/stream index `stream`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// mt19937_64 with distribution code kept local so draws are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Box-Muller; one normal per call, the sine branch is discarded.
  double normal();
  // First index with cdf[i] > u * cdf.back().
  std::size_t from_cdf(std::span<const double> cdf);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gqpe

#endif  // GQPE_RANDOM_HPP_
