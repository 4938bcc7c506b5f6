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

#ifndef GQPE_COMMON_HPP_
#define GQPE_COMMON_HPP_

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gqpe {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Numeric values are shared with the C API status codes.
enum class ErrorCode : int {
  kNonHermitianInput = 10,
  kSpectrumExceedsPi = 11,
  kDimensionMismatch = 12,
  kPauliPolicyOnNonPowerOfTwo = 13,
  kGivenNormTooSmall = 14,
  kInvalidParameter = 20,
  kUnsupportedN = 21,
  kNoClosedForm = 22,
  kSingularPoint = 23,
  kShapeCountMismatch = 30,
  kOrderTooLarge = 31,
  kNonCausalInput = 32,
  kInvalidSpec = 40,
  kIndexOutOfRange = 41,
  kWrongMode = 42,
  kResourceLimit = 43,
  kEnergyShiftOffGrid = 44,
  kNegativeTime = 50,
  kInvalidAccuracy = 51,
  kNegativeLineshapeWeight = 52,
  kParseError = 60,
  kValidationError = 61,
  kToleranceExceeded = 62,
  kIoError = 63,
  kInternal = 99,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

// Grid frequency 2*pi*k/n mapped into [-pi, pi).
double wrapped_omega(std::size_t k, std::size_t n);

// Wraps an arbitrary angle into [-pi, pi).
double wrap_angle(double x);

}  // namespace gqpe

#endif  // GQPE_COMMON_HPP_
