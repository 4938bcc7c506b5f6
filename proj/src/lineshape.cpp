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

#include "gqpe/lineshape.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace gqpe::lineshape {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0) || !std::isfinite(v))
    fail(ErrorCode::kInvalidParameter, std::string(what) + " must be finite and > 0");
}

double kaiser_length(const Kaiser& k, std::size_t n) {
  return k.length > 0 ? k.length : static_cast<double>(n) - 1.0;
}

double bessel_i0(double x) { return std::cyl_bessel_i(0.0, x); }

}  // namespace

std::string kind_name(const Kind& kind) {
  return std::visit(Overloaded{
                        [](const Rectangular&) { return std::string("rectangular"); },
                        [](const Lorentzian&) { return std::string("lorentzian"); },
                        [](const Gaussian&) { return std::string("gaussian"); },
                        [](const Kaiser&) { return std::string("kaiser"); },
                        [](const Causality&) { return std::string("causality"); },
                        [](const Custom&) { return std::string("custom"); },
                    },
                    kind);
}

Lineshape::Lineshape(Kind kind, std::vector<Complex> coefficients)
    : kind_(std::move(kind)), alpha_(std::move(coefficients)) {
  double norm2 = 0.0;
  for (const auto& a : alpha_) norm2 += std::norm(a);
  if (alpha_.empty() || std::abs(norm2 - 1.0) > 1e-12)
    fail(ErrorCode::kInvalidParameter, "coefficients must have unit norm");
}

Complex Lineshape::evaluate(double omega) const {
  // Recurrence on e^{i omega} drifts; direct polar per term keeps 1e-15 accuracy.
  Complex sum = 0.0;
  for (std::size_t k = 0; k < alpha_.size(); ++k)
    sum += alpha_[k] * std::polar(1.0, static_cast<double>(k) * omega);
  return sum / std::sqrt(static_cast<double>(alpha_.size()));
}

bool Lineshape::real_nonnegative() const {
  return std::all_of(alpha_.begin(), alpha_.end(),
                     [](const Complex& a) { return a.imag() == 0.0 && a.real() >= 0.0; });
}

Lineshape Lineshape::conjugated() const {
  std::vector<Complex> c(alpha_.size());
  std::transform(alpha_.begin(), alpha_.end(), c.begin(),
                 [](const Complex& a) { return std::conj(a); });
  return Lineshape(kind_, std::move(c));
}

Lineshape make_lineshape(const Kind& kind, std::size_t n) {
  if (n < 2 || !is_power_of_two(n))
    fail(ErrorCode::kUnsupportedN, "N must be a power of two >= 2, got " + std::to_string(n));
  std::vector<Complex> alpha(n, 0.0);
  std::visit(Overloaded{
                 [&](const Rectangular& r) {
                   if (r.width < 0 || r.width > static_cast<double>(n) || !std::isfinite(r.width))
                     fail(ErrorCode::kInvalidParameter, "rectangular width must be in [0, N]");
                   const double w = r.width > 0 ? r.width : static_cast<double>(n);
                   for (std::size_t k = 0; k < n && static_cast<double>(k) < w; ++k) alpha[k] = 1.0;
                 },
                 [&](const Lorentzian& l) {
                   require_positive(l.eta, "eta");
                   for (std::size_t k = 0; k < n; ++k)
                     alpha[k] = std::exp(-l.eta * static_cast<double>(k));
                 },
                 [&](const Gaussian& g) {
                   require_positive(g.sigma, "sigma");
                   for (std::size_t k = 0; k < n; ++k) {
                     const double x = static_cast<double>(k) / g.sigma;
                     alpha[k] = std::exp(-x * x);
                   }
                 },
                 [&](const Kaiser& kw) {
                   if (!(kw.shape >= 0) || !std::isfinite(kw.shape))
                     fail(ErrorCode::kInvalidParameter, "kaiser shape must be >= 0");
                   if (kw.length < 0 || !std::isfinite(kw.length))
                     fail(ErrorCode::kInvalidParameter, "kaiser length must be > 0");
                   const double len = kaiser_length(kw, n);
                   require_positive(len, "kaiser length");
                   const double denom = bessel_i0(kPi * kw.shape);
                   for (std::size_t k = 0; k < n; ++k) {
                     const double kk = static_cast<double>(k);
                     if (kk > len) break;
                     const double u = (2.0 * kk - len) / len;
                     alpha[k] = bessel_i0(kPi * kw.shape * std::sqrt(std::max(0.0, 1.0 - u * u))) / denom;
                   }
                 },
                 [&](const Causality&) { std::fill(alpha.begin(), alpha.end(), Complex(1.0)); },
                 [&](const Custom& c) {
                   if (c.coefficients.size() != n)
                     fail(ErrorCode::kInvalidParameter, "custom coefficients must have length N");
                   std::copy(c.coefficients.begin(), c.coefficients.end(), alpha.begin());
                 },
             },
             kind);
  double norm2 = 0.0;
  for (const auto& a : alpha) norm2 += std::norm(a);
  if (!(norm2 > 0) || !std::isfinite(norm2))
    fail(ErrorCode::kInvalidParameter, "window has zero or non-finite norm");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : alpha) a *= inv;
  // Renormalize once more so the 1e-12 invariant holds after rounding.
  norm2 = 0.0;
  for (const auto& a : alpha) norm2 += std::norm(a);
  for (auto& a : alpha) a /= std::sqrt(norm2);
  return Lineshape(kind, std::move(alpha));
}

Complex analytic_eval(const Kind& kind, double omega, std::size_t n) {
  return std::visit(
      Overloaded{
          [&](const Rectangular& r) -> Complex {
            const double t = r.width > 0 ? r.width : static_cast<double>(n);
            require_positive(t, "rectangular width (or N)");
            const double x = omega * t / 2.0;
            return t * (x == 0.0 ? 1.0 : std::sin(x) / x);
          },
          [&](const Lorentzian& l) -> Complex {
            require_positive(l.eta, "eta");
            return (1.0 / kPi) / Complex(l.eta, omega);
          },
          [&](const Gaussian& g) -> Complex {
            require_positive(g.sigma, "sigma");
            return g.sigma / 2.0 * std::exp(-g.sigma * g.sigma * omega * omega / 4.0);
          },
          [&](const Kaiser& kw) -> Complex {
            const double len = kw.length > 0 ? kw.length : static_cast<double>(n) - 1.0;
            require_positive(len, "kaiser length (or N - 1)");
            const double q = len * len * omega * omega - kw.shape * kw.shape;
            double s = 1.0;
            if (q > 0) {
              const double x = kPi * std::sqrt(q);
              s = std::sin(x) / x;
            } else if (q < 0) {
              const double y = kPi * std::sqrt(-q);
              s = std::sinh(y) / y;
            }
            return s / bessel_i0(kPi * kw.shape);
          },
          [&](const Causality&) -> Complex {
            if (omega == 0.0)
              fail(ErrorCode::kSingularPoint, "causality window is a distribution at omega = 0");
            return Complex(0.0, -1.0 / (kTwoPi * omega));
          },
          [&](const Custom&) -> Complex {
            fail(ErrorCode::kNoClosedForm, "custom lineshape has no closed form");
          },
      },
      kind);
}

Adequacy window_adequacy(const Lineshape& shape, double band, int order) {
  if (!(band > 0 && band < 1))
    fail(ErrorCode::kInvalidParameter, "band must lie in (0, 1)");
  if (order < 1) fail(ErrorCode::kInvalidParameter, "order must be >= 1");
  const std::size_t n = shape.size();
  constexpr int kSamples = 2001;
  double worst = 0.0;
  for (int s = 0; s < kSamples; ++s) {
    const double x = -band + 2.0 * band * s / (kSamples - 1);
    double captured = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double wk = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      if (std::abs(wrap_angle(wk - x)) <= band + 1e-12) captured += std::norm(shape.evaluate(x - wk));
    }
    worst = std::max(worst, 1.0 - captured);
  }
  Adequacy a;
  a.per_axis_deficit = std::max(0.0, worst);
  a.total_deficit = 1.0 - std::pow(1.0 - a.per_axis_deficit, order);
  return a;
}

Kaiser kaiser_for_band(double band, std::size_t n) {
  const double x = band * static_cast<double>(n) / kTwoPi;
  return Kaiser{std::sqrt(std::max(x * x - 1.0, 0.0)), 0.0};
}

void write_coefficients_csv(const Lineshape& shape, std::ostream& out) {
  out << "k,re,im\n" << std::setprecision(17);
  for (std::size_t k = 0; k < shape.size(); ++k)
    out << k << ',' << shape.coefficients()[k].real() << ',' << shape.coefficients()[k].imag() << '\n';
}

}  // namespace gqpe::lineshape
