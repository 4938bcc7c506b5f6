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

#ifndef GQPE_CIRCUIT_HPP_
#define GQPE_CIRCUIT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gqpe/common.hpp"
#include "gqpe/grid.hpp"
#include "gqpe/lineshape.hpp"
#include "gqpe/spectral.hpp"

namespace gqpe::sim {

using lineshape::Lineshape;
using spectral::EquilibriumState;
using spectral::OperatorChain;
using spectral::QuantumSystem;

enum class CircuitMode { kGeneral, kCompleteSquare, kRaman };

// Desk-scale guardrail on N^D * dim.
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 22;

struct CircuitSpec {
  QuantumSystem system;
  // General / complete-square: [V^(0), ..., V^(D)] with D registers.
  // Raman: [mu, mu] with two registers (t_1 carries L_delta, t_2 carries L_int).
  OperatorChain chain;
  std::vector<Lineshape> shapes;
  std::size_t initial = 0;
  CircuitMode mode = CircuitMode::kGeneral;
  // Multiplies branch t by e^{i E sum_j t_j} before the chain.
  std::optional<double> energy_shift;
  // Conjugate circuit: alpha*, conjugated chain, forward transform. Amplitude is conj(R).
  bool conjugate = false;
  // Raman only: start from mu|n0>/||mu|n0>|| and drop one block-encoding.
  bool prepared_dipole = false;

  int registers() const;
  std::size_t grid_size() const;
};

// Validates shapes, dimensions, mode rules and the guardrail.
void validate(const CircuitSpec& spec);

// Registers slow (register 1 slowest), system index fastest.
class GqpeState {
 public:
  GqpeState(int registers, std::size_t n, std::size_t sys_dim);

  int registers() const { return registers_; }
  std::size_t size_per_register() const { return n_; }
  std::size_t sys_dim() const { return sys_dim_; }
  std::size_t branch_count() const { return amplitudes_.size() / sys_dim_; }
  std::vector<Complex>& amplitudes() { return amplitudes_; }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::span<const std::size_t> registers_index, std::size_t sys) const;
  double norm2() const;
  double leaked_norm() const { return leaked_; }
  void set_leaked_norm(double v) { leaked_ = v; }

 private:
  int registers_;
  std::size_t n_;
  std::size_t sys_dim_;
  std::vector<Complex> amplitudes_;
  double leaked_ = 0.0;
};

GqpeState prepare(const CircuitSpec& spec);
// Applies the chain (or the Raman evolution) branch by branch, scaled by 1/Omega.
GqpeState apply_chain(GqpeState state, const CircuitSpec& spec);
// Each register: (1/sqrt N) e^{-2 pi i t k / N}.
GqpeState inverse_qft_all(GqpeState state);
GqpeState forward_qft_all(GqpeState state);
// Full pipeline: prepare, chain, transform (inverse, or forward for the conjugate circuit).
GqpeState run_circuit(const CircuitSpec& spec);

// Omega times the amplitude at (omega, system = n0) of a finished state.
Complex response_amplitude(const GqpeState& state, const CircuitSpec& spec,
                           std::span<const std::size_t> omega_indices);

// Whole grid; mixed states sum rho_n0 over per-n0 circuits.
ResponseGrid response_grid(const CircuitSpec& spec, const EquilibriumState& state);

struct ProbabilityGrid {
  RealGrid p;
  double leaked_norm = 0.0;
  double omega_product = 1.0;
};

// Marginal over the unmeasured system register, averaged over rho.
ProbabilityGrid run_complete_square(const CircuitSpec& spec, const EquilibriumState& state);

struct RamanResult {
  // Raw P over (omega_1, omega_2), plus the failure weight.
  ProbabilityGrid raw;
  // Mapped onto (omega_I, omega_S) and rescaled to the oracle chi3 units.
  RealGrid chi3;
};

// Maps raw register indices to (k_I, k_S); residual is lambda_n0 - E in grid units.
std::pair<std::size_t, std::size_t> raman_indices(std::size_t k1, std::size_t k2, long long residual,
                                                  std::size_t n);
// lambda_n0 minus the in-circuit shift, in grid units; EnergyShiftOffGrid if not integral.
long long raman_residual_bins(const CircuitSpec& spec, std::size_t n0);

RamanResult run_raman(const CircuitSpec& spec, const EquilibriumState& state);

struct Histogram {
  int order = 0;
  std::size_t n = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t failures = 0;
  std::uint64_t shots = 0;
};

// Multinomial draws over P plus the failure outcome.
Histogram sample_frequencies(const ProbabilityGrid& grid, std::uint64_t shots, std::uint64_t seed);

// |Re R| and |Im R| from the (U_R +- U*_R)/2 branches.
std::pair<double, double> real_imag_separation(const CircuitSpec& spec,
                                               std::span<const std::size_t> omega_indices);

}  // namespace gqpe::sim

#endif  // GQPE_CIRCUIT_HPP_
