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

#ifndef GQPE_GRID_HPP_
#define GQPE_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gqpe/common.hpp"

namespace gqpe {

inline constexpr const char* kOmegaConvention =
    "omega_k = 2*pi*k/N wrapped to [-pi, pi)";

// N^D complex values, axis 0 (omega_1) slowest. Stored values are the
// unnormalized R; omega_product is metadata.
class ResponseGrid {
 public:
  ResponseGrid() = default;
  ResponseGrid(int order, std::size_t n, double omega_product = 1.0);

  int order() const { return order_; }
  std::size_t size_per_axis() const { return n_; }
  std::size_t point_count() const { return values_.size(); }
  double omega_product() const { return omega_; }
  void set_omega_product(double omega) { omega_ = omega; }

  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex& operator[](std::size_t flat) { return values_[flat]; }
  const Complex& operator[](std::size_t flat) const { return values_[flat]; }
  Complex at(std::span<const std::size_t> index) const;

  std::size_t flatten(std::span<const std::size_t> index) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;
  std::size_t argmax_abs() const;

 private:
  int order_ = 0;
  std::size_t n_ = 0;
  double omega_ = 1.0;
  std::vector<Complex> values_;
};

// N^D real values with the same layout (probabilities, chi3 maps).
struct RealGrid {
  int order = 0;
  std::size_t n = 0;
  std::vector<double> values;
  std::size_t argmax() const;
};

// Largest |a - b| over matching points; throws DimensionMismatch on shape mismatch.
double max_abs_diff(const ResponseGrid& a, const ResponseGrid& b);
double max_abs_diff(const RealGrid& a, const RealGrid& b);

// Integer power with overflow guard against `limit`.
std::size_t checked_power(std::size_t base, int exponent, std::size_t limit);

struct FileStamp {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
};

std::string hex64(std::uint64_t v);

// Header row `index_1..,omega_1..,re,im`, 17 significant digits.
void write_grid_csv(const ResponseGrid& grid, const FileStamp& stamp, std::ostream& out);
void write_grid_csv(const RealGrid& grid, const FileStamp& stamp, std::ostream& out);
// Header row `index_1..,count`; failure outcome on a final `failure,<count>` row.
void write_histogram_csv(int order, std::size_t n, const std::vector<std::uint64_t>& counts,
                         std::uint64_t failures, const FileStamp& stamp, std::ostream& out);

}  // namespace gqpe

#endif  // GQPE_GRID_HPP_
