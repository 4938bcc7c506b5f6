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

#include "gqpe/grid.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace gqpe {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

void write_stamp(const FileStamp& stamp, std::ostream& out) {
  out << "# gqpe config_hash=" << hex64(stamp.config_hash) << " seed=" << stamp.seed << '\n';
}

void write_index_header(int order, bool with_omega, std::ostream& out) {
  for (int j = 1; j <= order; ++j) out << "index_" << j << ',';
  if (with_omega)
    for (int j = 1; j <= order; ++j) out << "omega_" << j << ',';
}

std::vector<std::size_t> unflatten_impl(std::size_t flat, int order, std::size_t n) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(order));
  for (int j = order - 1; j >= 0; --j) {
    idx[static_cast<std::size_t>(j)] = flat % n;
    flat /= n;
  }
  return idx;
}

void write_index_cells(const std::vector<std::size_t>& idx, std::size_t n, std::ostream& out) {
  for (auto k : idx) out << k << ',';
  for (auto k : idx) out << fmt17(wrapped_omega(k, n)) << ',';
}

}  // namespace

std::size_t checked_power(std::size_t base, int exponent, std::size_t limit) {
  std::size_t r = 1;
  for (int i = 0; i < exponent; ++i) {
    if (base != 0 && r > limit / base)
      fail(ErrorCode::kResourceLimit, "grid size exceeds the desk-scale limit");
    r *= base;
  }
  return r;
}

ResponseGrid::ResponseGrid(int order, std::size_t n, double omega_product)
    : order_(order), n_(n), omega_(omega_product) {
  if (order < 1) fail(ErrorCode::kInvalidSpec, "grid order must be >= 1");
  if (n < 1) fail(ErrorCode::kInvalidSpec, "grid size must be >= 1");
  values_.assign(checked_power(n, order, std::size_t{1} << 26), Complex(0.0));
}

std::size_t ResponseGrid::flatten(std::span<const std::size_t> index) const {
  if (index.size() != static_cast<std::size_t>(order_))
    fail(ErrorCode::kIndexOutOfRange, "index tuple length differs from grid order");
  std::size_t flat = 0;
  for (auto k : index) {
    if (k >= n_) fail(ErrorCode::kIndexOutOfRange, "frequency index out of range");
    flat = flat * n_ + k;
  }
  return flat;
}

std::vector<std::size_t> ResponseGrid::unflatten(std::size_t flat) const {
  return unflatten_impl(flat, order_, n_);
}

Complex ResponseGrid::at(std::span<const std::size_t> index) const {
  return values_[flatten(index)];
}

std::size_t ResponseGrid::argmax_abs() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (std::abs(values_[i]) > std::abs(values_[best])) best = i;
  return best;
}

std::size_t RealGrid::argmax() const {
  return static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());
}

double max_abs_diff(const ResponseGrid& a, const ResponseGrid& b) {
  if (a.order() != b.order() || a.size_per_axis() != b.size_per_axis())
    fail(ErrorCode::kDimensionMismatch, "grids differ in shape");
  double m = 0.0;
  for (std::size_t i = 0; i < a.point_count(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs_diff(const RealGrid& a, const RealGrid& b) {
  if (a.order != b.order || a.n != b.n) fail(ErrorCode::kDimensionMismatch, "grids differ in shape");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_grid_csv(const ResponseGrid& grid, const FileStamp& stamp, std::ostream& out) {
  write_stamp(stamp, out);
  write_index_header(grid.order(), true, out);
  out << "re,im\n";
  for (std::size_t f = 0; f < grid.point_count(); ++f) {
    write_index_cells(grid.unflatten(f), grid.size_per_axis(), out);
    out << fmt17(grid[f].real()) << ',' << fmt17(grid[f].imag()) << '\n';
  }
}

void write_grid_csv(const RealGrid& grid, const FileStamp& stamp, std::ostream& out) {
  write_stamp(stamp, out);
  write_index_header(grid.order, true, out);
  out << "re,im\n";
  for (std::size_t f = 0; f < grid.values.size(); ++f) {
    write_index_cells(unflatten_impl(f, grid.order, grid.n), grid.n, out);
    out << fmt17(grid.values[f]) << ",0\n";
  }
}

void write_histogram_csv(int order, std::size_t n, const std::vector<std::uint64_t>& counts,
                         std::uint64_t failures, const FileStamp& stamp, std::ostream& out) {
  write_stamp(stamp, out);
  write_index_header(order, false, out);
  out << "count\n";
  for (std::size_t f = 0; f < counts.size(); ++f) {
    for (auto k : unflatten_impl(f, order, n)) out << k << ',';
    out << counts[f] << '\n';
  }
  out << "failure";
  for (int j = 1; j < order; ++j) out << ',';
  out << ',' << failures << '\n';
}

}  // namespace gqpe
