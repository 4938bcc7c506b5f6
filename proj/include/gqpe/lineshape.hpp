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

#ifndef GQPE_LINESHAPE_HPP_
#define GQPE_LINESHAPE_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gqpe/common.hpp"

namespace gqpe::lineshape {

// width 0 means the full register; 0 < width < N truncates the support.
struct Rectangular {
  double width = 0.0;
};
struct Lorentzian {
  double eta = 0.1;
};
// Peak at k = 0, decaying as e^{-k^2/sigma^2}.
struct Gaussian {
  double sigma = 4.0;
};
// Support [0, length], centered at length/2. length 0 means N - 1.
// shape 0 reduces to a rectangular window on the support.
struct Kaiser {
  double shape = 3.0;
  double length = 0.0;
};
// theta(t) with no decay: uniform coefficients.
struct Causality {};
struct Custom {
  std::vector<Complex> coefficients;
};

using Kind = std::variant<Rectangular, Lorentzian, Gaussian, Kaiser, Causality, Custom>;

std::string kind_name(const Kind& kind);

class Lineshape {
 public:
  Lineshape(Kind kind, std::vector<Complex> coefficients);

  const Kind& kind() const { return kind_; }
  std::size_t size() const { return alpha_.size(); }
  const std::vector<Complex>& coefficients() const { return alpha_; }
  // (1/sqrt(N)) sum_k alpha_k e^{i k omega}
  Complex evaluate(double omega) const;
  bool real_nonnegative() const;
  // Lineshape with conjugated coefficients.
  Lineshape conjugated() const;

 private:
  Kind kind_;
  std::vector<Complex> alpha_;
};

Lineshape make_lineshape(const Kind& kind, std::size_t n);

inline Complex evaluate(const Lineshape& shape, double omega) {
  return shape.evaluate(omega);
}

// Frequency-domain closed forms:
//   Lorentzian  (1/pi) / (i w + eta)
//   Gaussian    (sigma/2) e^{-sigma^2 w^2 / 4}
//   Rectangular T sinc(w T / 2)  (T = width, or n when width is 0)
//   Kaiser      sinc(pi sqrt(L^2 w^2 - a^2)) / I0(pi a), sinc continued to sinh
//               for L^2 w^2 < a^2 (L = length, or n - 1 when length is 0)
//   Causality   principal part -i / (2 pi w); the delta term is not pointwise.
// n is only consulted for defaulted widths.
Complex analytic_eval(const Kind& kind, double omega, std::size_t n = 0);

struct Adequacy {
  double per_axis_deficit = 0.0;
  // 1 - (1 - d)^D for D registers sharing the window.
  double total_deficit = 0.0;
};

// Worst in-band power deficit over omega in [-band, band]: one minus the
// power captured by the grid bins lying within the band of omega.
Adequacy window_adequacy(const Lineshape& shape, double band, int order = 1);

// Kaiser shape matched to a target band: a = sqrt(max((band N / 2 pi)^2 - 1, 0)).
Kaiser kaiser_for_band(double band, std::size_t n);

void write_coefficients_csv(const Lineshape& shape, std::ostream& out);

}  // namespace gqpe::lineshape

#endif  // GQPE_LINESHAPE_HPP_
