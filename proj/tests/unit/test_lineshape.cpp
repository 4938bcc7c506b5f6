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

#include <doctest.h>

#include <sstream>

#include "gqpe/lineshape.hpp"
#include "../test_util.hpp"

using namespace gqpe;
using namespace gqpe::lineshape;
using testutil::Complex;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

double norm2(const Lineshape& s) {
  double t = 0.0;
  for (const auto& a : s.coefficients()) t += std::norm(a);
  return t;
}

Complex direct_sum(const std::vector<Complex>& alpha, double w) {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < alpha.size(); ++k)
    acc += alpha[k] * Complex(std::cos(static_cast<double>(k) * w), std::sin(static_cast<double>(k) * w));
  return acc / std::sqrt(static_cast<double>(alpha.size()));
}

}  // namespace

TEST_CASE("rectangular N=4 coefficients") {
  const auto s = make_lineshape(Rectangular{}, 4);
  for (const auto& a : s.coefficients()) CHECK(a == Complex(0.5, 0.0));
  CHECK(std::abs(s.evaluate(0.0) - 1.0) < 1e-15);
}

TEST_CASE("every kind is unit norm") {
  for (std::size_t n : {2u, 4u, 16u, 128u}) {
    for (const Kind& k : std::vector<Kind>{Rectangular{}, Rectangular{static_cast<double>(n / 2)}, Lorentzian{0.05},
                                           Lorentzian{2.0}, Gaussian{0.5}, Gaussian{40.0}, Kaiser{0.0},
                                           Kaiser{3.0}, Kaiser{5.0, static_cast<double>(n / 2)}, Causality{}}) {
      const auto s = make_lineshape(k, n);
      CHECK(s.size() == n);
      CHECK(norm2(s) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("lorentzian follows e^{-eta k}") {
  const auto s = make_lineshape(Lorentzian{0.3}, 16);
  const auto& a = s.coefficients();
  for (std::size_t k = 1; k < 16; ++k) CHECK(std::abs(a[k] / a[k - 1] - std::exp(-0.3)) < 1e-12);
}

TEST_CASE("gaussian peaks at k = 0") {
  const auto s = make_lineshape(Gaussian{4.0}, 16);
  const auto& a = s.coefficients();
  for (std::size_t k = 0; k < 16; ++k)
    CHECK(a[k].real() == doctest::Approx(a[0].real() * std::exp(-double(k * k) / 16.0)).epsilon(1e-12));
}

TEST_CASE("kaiser follows the Bessel profile on its support") {
  const double shape = 2.5, len = 10.0;
  const auto s = make_lineshape(Kaiser{shape, len}, 16);
  const auto& a = s.coefficients();
  // I0 by its power series, independent of the library call.
  auto i0 = [](double x) {
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 60; ++m) {
      term *= (x / 2) * (x / 2) / (m * m);
      sum += term;
    }
    return sum;
  };
  std::vector<double> ref(16, 0.0);
  double nrm = 0.0;
  for (int k = 0; k <= 10; ++k) {
    const double u = (2.0 * k - len) / len;
    ref[static_cast<std::size_t>(k)] = i0(kPi * shape * std::sqrt(1 - u * u)) / i0(kPi * shape);
    nrm += ref[static_cast<std::size_t>(k)] * ref[static_cast<std::size_t>(k)];
  }
  for (std::size_t k = 0; k < 16; ++k) {
    CHECK(a[k].imag() == 0.0);
    CHECK(a[k].real() == doctest::Approx(ref[k] / std::sqrt(nrm)).epsilon(1e-12));
    if (k > 10) CHECK(a[k] == Complex(0.0, 0.0));
  }
  CHECK(s.real_nonnegative());
}

TEST_CASE("evaluate matches direct summation and is periodic") {
  const auto s = make_lineshape(Lorentzian{0.2}, 64);
  CHECK(std::abs(s.evaluate(0.1) - direct_sum(s.coefficients(), 0.1)) < 1e-12);
  std::mt19937_64 g(1);
  for (int i = 0; i < 100; ++i) {
    const double w = testutil::uniform(g, -10, 10);
    CHECK(std::abs(s.evaluate(w) - s.evaluate(w + 2 * kPi)) <= 1e-12);
  }
  const auto r = make_lineshape(Rectangular{}, 32);
  CHECK(std::abs(r.evaluate(0.0) - 1.0) < 1e-14);
}

TEST_CASE("custom coefficients are normalized and conjugation works") {
  const auto s = make_lineshape(Custom{{Complex(1, 1), Complex(0, 2), 0.0, 1.0}}, 4);
  CHECK(norm2(s) == doctest::Approx(1.0));
  CHECK_FALSE(s.real_nonnegative());
  const auto c = s.conjugated();
  CHECK(std::abs(c.evaluate(0.3) - std::conj(s.evaluate(-0.3))) < 1e-14);
  CHECK(code_of([] { make_lineshape(Custom{{1.0, 2.0}}, 4); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("construction errors") {
  CHECK(code_of([] { make_lineshape(Rectangular{}, 6); }) == ErrorCode::kUnsupportedN);
  CHECK(code_of([] { make_lineshape(Rectangular{}, 1); }) == ErrorCode::kUnsupportedN);
  CHECK(code_of([] { make_lineshape(Lorentzian{0.0}, 8); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { make_lineshape(Gaussian{-1.0}, 8); }) == ErrorCode::kInvalidParameter);
  CHECK(code_of([] { make_lineshape(Kaiser{-1.0}, 8); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("analytic forms") {
  CHECK(std::abs(analytic_eval(Lorentzian{0.25}, 0.0) - 1.0 / (kPi * 0.25)) < 1e-12);
  CHECK(std::abs(analytic_eval(Lorentzian{0.25}, 0.5) - (1.0 / kPi) / Complex(0.25, 0.5)) < 1e-12);
  CHECK(std::abs(analytic_eval(Gaussian{3.0}, 0.0) - 1.5) < 1e-12);
  CHECK(std::abs(analytic_eval(Rectangular{8.0}, 1e-9) - 8.0) < 1e-6);
  CHECK(std::abs(analytic_eval(Rectangular{8.0}, 0.0) - 8.0) < 1e-12);
  CHECK(code_of([] { analytic_eval(Custom{{1.0}}, 0.1); }) == ErrorCode::kNoClosedForm);
  CHECK(code_of([] { analytic_eval(Causality{}, 0.0); }) == ErrorCode::kSingularPoint);
  CHECK(std::abs(analytic_eval(Causality{}, 0.5) - Complex(0, -1.0 / (2 * kPi * 0.5))) < 1e-12);
}

TEST_CASE("discrete lorentzian tracks the analytic shape") {
  const double eta = 0.25;
  const std::size_t n = 256;
  const auto s = make_lineshape(Lorentzian{eta}, n);
  std::vector<double> d, a;
  for (int i = 0; i <= 200; ++i) {
    const double w = -kPi / 2 + kPi * i / 200.0;
    d.push_back(std::abs(s.evaluate(w)));
    a.push_back(std::abs(analytic_eval(Lorentzian{eta}, w)));
  }
  double num = 0, den = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    num += d[i] * a[i];
    den += a[i] * a[i];
  }
  const double c = num / den;
  double err = 0, ref = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    err += (d[i] - c * a[i]) * (d[i] - c * a[i]);
    ref += d[i] * d[i];
  }
  CHECK(std::sqrt(err / ref) <= 0.05);
}

TEST_CASE("window adequacy") {
  const auto r2 = make_lineshape(Rectangular{}, 2);
  CHECK(window_adequacy(r2, 1e-6).per_axis_deficit < 1e-10);

  for (std::size_t n : {16u, 32u, 64u}) {
    const double band = 0.3;
    const auto k = make_lineshape(kaiser_for_band(band, n), n);
    const auto r = make_lineshape(Rectangular{}, n);
    CHECK(window_adequacy(k, band).per_axis_deficit <= window_adequacy(r, band).per_axis_deficit);
  }
  double prev = 2.0;
  for (std::size_t n : {8u, 16u, 32u, 64u}) {
    const auto k = make_lineshape(Kaiser{3.0}, n);
    const double d = window_adequacy(k, 0.5).per_axis_deficit;
    CHECK(d <= prev);
    prev = d;
  }
  const auto a = window_adequacy(make_lineshape(Kaiser{2.0}, 16), 0.5, 3);
  CHECK(a.total_deficit == doctest::Approx(1 - std::pow(1 - a.per_axis_deficit, 3)));
  CHECK(code_of([&] { window_adequacy(r2, 1.5); }) == ErrorCode::kInvalidParameter);
}

TEST_CASE("coefficient CSV export") {
  std::ostringstream os;
  write_coefficients_csv(make_lineshape(Rectangular{}, 4), os);
  const std::string s = os.str();
  CHECK(s.find("k,re,im") != std::string::npos);
  CHECK(s.find("3,0.5,0") != std::string::npos);
}
