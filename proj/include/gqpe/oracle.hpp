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

#ifndef GQPE_ORACLE_HPP_
#define GQPE_ORACLE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gqpe/common.hpp"
#include "gqpe/grid.hpp"
#include "gqpe/lineshape.hpp"
#include "gqpe/spectral.hpp"

namespace gqpe::oracle {

using lineshape::Lineshape;
using spectral::EquilibriumState;
using spectral::OperatorChain;
using spectral::PerturbationOperator;
using spectral::QuantumSystem;

// One operator of a time-ordered product, acting at tau = sum_j coeffs[j] t_{j+1}.
struct Factor {
  PerturbationOperator op;
  std::vector<int> time_coefficients;
};

// sign * tr(O_1(tau_1) ... O_m(tau_m) rho) as a function of (t_1, ..., t_D).
struct Correlator {
  int order = 0;
  double sign = 1.0;
  std::vector<Factor> factors;

  double omega_product() const;
};

// V^(0)_I(t_D) V^(1)_I(t_{D-1}) ... V^(D-1)_I(t_1) V^(D).
Correlator chain_correlator(const OperatorChain& chain);

struct Line {
  std::vector<double> delta;
  Complex weight;
};

struct DeltaComb {
  int order = 0;
  std::vector<Line> lines;
};

inline constexpr double kWeightFloor = 1e-15;

DeltaComb delta_comb(const QuantumSystem& system, const EquilibriumState& state,
                     const OperatorChain& chain);
DeltaComb delta_comb(const QuantumSystem& system, const EquilibriumState& state,
                     const Correlator& correlator);

// Dense matrix route: sign * sum_n rho_n <n| prod_i e^{iH tau_i} O_i e^{-iH tau_i} |n>.
Complex correlation_value(const QuantumSystem& system, const EquilibriumState& state,
                          const Correlator& correlator, std::span<const double> times);

// values[w] = sum_lines weight * prod_j shapes[j](Delta_j - w_j) on the grid 2 pi k / N.
ResponseGrid broadened_response(const DeltaComb& comb, std::span<const Lineshape> shapes,
                                std::size_t n, double omega_product = 1.0);

ResponseGrid linear_absorption(const QuantumSystem& system, const EquilibriumState& state,
                               const PerturbationOperator& dipole, const Lineshape& shape,
                               std::size_t n);

// sum_n0 rho_n0 sum_s |R_s(w)|^2 where R_s keeps the final system index s open.
// Divide by Omega^2 for the sampling probabilities.
RealGrid complete_square_response(const QuantumSystem& system, const EquilibriumState& state,
                                  const OperatorChain& chain, std::span<const Lineshape> shapes,
                                  std::size_t n);

// Axis 0 is omega_I, axis 1 is omega_S:
// sum_n0 rho sum_n2 |sum_n1 mu_{n2 n1} mu_{n1 n0} L_f(Delta[n0][n2] - w_I + w_S) L_int(Delta[n0][n1] - w_I)|^2
RealGrid raman_chi3(const QuantumSystem& system, const EquilibriumState& state,
                    const PerturbationOperator& dipole, const Lineshape& shape_int,
                    const Lineshape& shape_f, std::size_t n);

enum class Side { kRight, kLeft };

// Nested-commutator path: level k (1..D) adds V at s_{D-k} = t_1 + ... + t_{D-k},
// to the right (sign +) or the left (sign -) of the running product that
// starts as A(s_D).
Correlator nested_path(const PerturbationOperator& a, const PerturbationOperator& v, int order,
                       std::span<const Side> choices);

inline constexpr int kMaxNestedOrder = 3;

struct NestedResponse {
  ResponseGrid total;
  std::vector<ResponseGrid> paths;
  std::vector<Correlator> correlators;
  // Path index whose choices are all flipped; its correlator is (-1)^D times the conjugate.
  std::vector<std::size_t> partner;
  bool pairing_verified = false;
};

// Paths indexed by bitmask: bit k-1 set means level k chose Side::kLeft.
NestedResponse nested_commutator_response(const QuantumSystem& system,
                                          const EquilibriumState& state,
                                          const PerturbationOperator& a,
                                          const PerturbationOperator& v, int order,
                                          std::span<const Lineshape> shapes, std::size_t n);

// Periodic conjugate function on an even N-point grid:
// H[f]_j = (2/N) sum_{j - m odd} f_m cot((w_j - w_m) / 2), so H[cos] = sin.
std::vector<double> periodic_hilbert(std::span<const double> f);

// R(w) = sum w L(Delta - w) with a one-sided window holds only e^{-ikw}
// terms, so Re - mean(Re) = H[Im] and Im = -H[Re]. Returns the larger max-norm deviation
// divided by the peak |R|. axis_eta must resolve on the grid (> 2 pi / N).
double kk_residual(const ResponseGrid& grid, double axis_eta);

}  // namespace gqpe::oracle

#endif  // GQPE_ORACLE_HPP_
