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

#include "gqpe/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "gqpe/random.hpp"

namespace gqpe::sim {

namespace {

// In-place radix-2 DFT: x_k <- (1/sqrt N) sum_t x_t e^{sign 2 pi i t k / N}.
void dft(std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex w = std::polar(1.0, ang * static_cast<double>(k));
        const Complex u = x[start + k];
        const Complex v = x[start + k + len / 2] * w;
        x[start + k] = u + v;
        x[start + k + len / 2] = u - v;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : x) v *= scale;
}

GqpeState transform_all(GqpeState state, int sign) {
  const std::size_t n = state.size_per_register();
  const int regs = state.registers();
  auto& amp = state.amplitudes();
  std::vector<Complex> line(n);
  // Register j has stride N^{R-1-j} * d.
  std::size_t stride = state.sys_dim();
  for (int j = regs - 1; j >= 0; --j) {
    const std::size_t block = stride * n;
    for (std::size_t outer = 0; outer < amp.size(); outer += block) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        for (std::size_t t = 0; t < n; ++t) line[t] = amp[outer + inner + t * stride];
        dft(line, sign);
        for (std::size_t t = 0; t < n; ++t) amp[outer + inner + t * stride] = line[t];
      }
    }
    stride = block;
  }
  return state;
}

CircuitSpec with_initial(const CircuitSpec& spec, std::size_t n0) {
  CircuitSpec s = spec;
  s.initial = n0;
  return s;
}

void require_mode(const CircuitSpec& spec, CircuitMode mode, const char* what) {
  if (spec.mode != mode) fail(ErrorCode::kWrongMode, std::string(what) + " called with a different circuit mode");
}

void check_state(const CircuitSpec& spec, const EquilibriumState& state) {
  if (state.dim() != spec.system.dim())
    fail(ErrorCode::kDimensionMismatch, "state dim differs from system dim");
}

}  // namespace

int CircuitSpec::registers() const {
  return mode == CircuitMode::kRaman ? 2 : chain.order();
}

std::size_t CircuitSpec::grid_size() const {
  return shapes.empty() ? 0 : shapes.front().size();
}

void validate(const CircuitSpec& spec) {
  const int regs = spec.registers();
  if (spec.mode == CircuitMode::kRaman) {
    if (spec.chain.size() != 2) fail(ErrorCode::kInvalidSpec, "Raman circuit takes the chain [mu, mu]");
    if (!spec.chain.at(0).is_hermitian() || !spec.chain.at(1).is_hermitian())
      fail(ErrorCode::kNonHermitianInput, "Raman dipole must be Hermitian");
  } else if (spec.prepared_dipole) {
    fail(ErrorCode::kInvalidSpec, "dipole preparation is a Raman-mode option");
  }
  if (regs < 1) fail(ErrorCode::kInvalidSpec, "circuit needs at least one time register");
  if (spec.shapes.size() != static_cast<std::size_t>(regs))
    fail(ErrorCode::kShapeCountMismatch, "expected " + std::to_string(regs) + " lineshapes, got " +
                                             std::to_string(spec.shapes.size()));
  const std::size_t n = spec.grid_size();
  for (const auto& s : spec.shapes)
    if (s.size() != n) fail(ErrorCode::kInvalidSpec, "all registers must share N");
  if (spec.chain.dim() != spec.system.dim())
    fail(ErrorCode::kDimensionMismatch, "chain dim differs from system dim");
  if (spec.initial >= spec.system.dim()) fail(ErrorCode::kIndexOutOfRange, "initial index out of range");
  std::size_t total = 0;
  try {
    total = checked_power(n, regs, kMaxAmplitudes);
  } catch (const Error&) {
    fail(ErrorCode::kResourceLimit, "N^D * dim exceeds 2^22 amplitudes");
  }
  if (total > kMaxAmplitudes / spec.system.dim())
    fail(ErrorCode::kResourceLimit, "N^D * dim = " + std::to_string(total) + " * " +
                                        std::to_string(spec.system.dim()) + " exceeds 2^22 amplitudes");
}

GqpeState::GqpeState(int registers, std::size_t n, std::size_t sys_dim)
    : registers_(registers), n_(n), sys_dim_(sys_dim) {
  amplitudes_.assign(checked_power(n, registers, kMaxAmplitudes) * sys_dim, Complex(0.0));
}

Complex GqpeState::amplitude(std::span<const std::size_t> registers_index, std::size_t sys) const {
  if (registers_index.size() != static_cast<std::size_t>(registers_))
    fail(ErrorCode::kIndexOutOfRange, "index tuple length differs from register count");
  if (sys >= sys_dim_) fail(ErrorCode::kIndexOutOfRange, "system index out of range");
  std::size_t flat = 0;
  for (auto k : registers_index) {
    if (k >= n_) fail(ErrorCode::kIndexOutOfRange, "frequency index out of range");
    flat = flat * n_ + k;
  }
  return amplitudes_[flat * sys_dim_ + sys];
}

double GqpeState::norm2() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

GqpeState prepare(const CircuitSpec& spec) {
  validate(spec);
  const int regs = spec.registers();
  const std::size_t n = spec.grid_size();
  const std::size_t d = spec.system.dim();
  GqpeState state(regs, n, d);

  ComplexVector init = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  init(static_cast<Eigen::Index>(spec.initial)) = 1.0;
  if (spec.prepared_dipole) {
    init = spec.chain.at(1).matrix() * init;
    const double norm = init.norm();
    if (norm == 0.0) fail(ErrorCode::kInvalidSpec, "mu|n0> vanishes; nothing to prepare");
    init /= norm;
  }
  if (spec.conjugate) init = init.conjugate();

  auto& amp = state.amplitudes();
  const std::size_t branches = state.branch_count();
  std::vector<std::size_t> idx(static_cast<std::size_t>(regs), 0);
  for (std::size_t b = 0; b < branches; ++b) {
    Complex w = 1.0;
    for (int j = 0; j < regs; ++j) {
      const Complex a = spec.shapes[static_cast<std::size_t>(j)].coefficients()[idx[static_cast<std::size_t>(j)]];
      w *= spec.conjugate ? std::conj(a) : a;
    }
    for (std::size_t s = 0; s < d; ++s) amp[b * d + s] = w * init(static_cast<Eigen::Index>(s));
    for (int j = regs - 1; j >= 0; --j) {
      if (++idx[static_cast<std::size_t>(j)] < n) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  return state;
}

GqpeState apply_chain(GqpeState state, const CircuitSpec& spec) {
  validate(spec);
  const int regs = spec.registers();
  const std::size_t n = spec.grid_size();
  const std::size_t d = spec.system.dim();
  if (state.registers() != regs || state.size_per_register() != n || state.sys_dim() != d)
    fail(ErrorCode::kDimensionMismatch, "state shape does not match the circuit spec");
  const double before = state.norm2();

  // Scaled block-encoded operators, conjugated for U*_R.
  std::vector<ComplexMatrix> w;
  for (const auto& op : spec.chain.ops()) {
    ComplexMatrix m = op.matrix() / op.one_norm();
    w.push_back(spec.conjugate ? ComplexMatrix(m.conjugate()) : m);
  }
  // phase[t](n) = e^{i lambda_n t}; the conjugate circuit flips the sign.
  const double psign = spec.conjugate ? -1.0 : 1.0;
  std::vector<ComplexVector> phase(n);
  for (std::size_t t = 0; t < n; ++t) phase[t] = spec.system.phases(psign * static_cast<double>(t));
  const double shift = spec.energy_shift.value_or(0.0);

  auto& amp = state.amplitudes();
  const auto di = static_cast<Eigen::Index>(d);
  ComplexVector s(di);
  std::vector<std::size_t> t(static_cast<std::size_t>(regs), 0);
  for (std::size_t b = 0; b < state.branch_count(); ++b) {
    Eigen::Map<ComplexVector> slice(amp.data() + b * d, di);
    s = slice;
    std::size_t tsum = 0;
    for (auto v : t) tsum += v;
    if (spec.mode == CircuitMode::kRaman) {
      // e^{-iH t_1} mu e^{-iH t_2} mu |psi>
      if (!spec.prepared_dipole) s = w[1] * s;
      s = phase[t[1]].conjugate().cwiseProduct(s);
      s = w[0] * s;
      s = phase[t[0]].conjugate().cwiseProduct(s);
    } else {
      const int dd = regs;
      s = w[static_cast<std::size_t>(dd)] * s;
      for (int i = dd - 1; i >= 0; --i) {
        const std::size_t ti = t[static_cast<std::size_t>(dd - i - 1)];  // V^(i) at t_{D-i}
        s = phase[ti].conjugate().cwiseProduct(s);
        s = w[static_cast<std::size_t>(i)] * s;
        s = phase[ti].cwiseProduct(s);
      }
    }
    if (shift != 0.0) s *= std::polar(1.0, psign * shift * static_cast<double>(tsum));
    slice = s;
    for (int j = regs - 1; j >= 0; --j) {
      if (++t[static_cast<std::size_t>(j)] < n) break;
      t[static_cast<std::size_t>(j)] = 0;
    }
  }
  state.set_leaked_norm(state.leaked_norm() + std::max(0.0, before - state.norm2()));
  return state;
}

GqpeState inverse_qft_all(GqpeState state) { return transform_all(std::move(state), -1); }

GqpeState forward_qft_all(GqpeState state) { return transform_all(std::move(state), +1); }

GqpeState run_circuit(const CircuitSpec& spec) {
  GqpeState s = apply_chain(prepare(spec), spec);
  return spec.conjugate ? forward_qft_all(std::move(s)) : inverse_qft_all(std::move(s));
}

Complex response_amplitude(const GqpeState& state, const CircuitSpec& spec,
                           std::span<const std::size_t> omega_indices) {
  return spec.chain.omega_product() * state.amplitude(omega_indices, spec.initial);
}

ResponseGrid response_grid(const CircuitSpec& spec, const EquilibriumState& state) {
  require_mode(spec, CircuitMode::kGeneral, "response_grid");
  check_state(spec, state);
  const std::size_t n = spec.grid_size();
  const double omega = spec.chain.omega_product();
  ResponseGrid grid(spec.registers(), n, omega);
  for (std::size_t n0 : state.support()) {
    const GqpeState s = run_circuit(with_initial(spec, n0));
    const std::size_t d = s.sys_dim();
    for (std::size_t f = 0; f < grid.point_count(); ++f)
      grid[f] += state.weight(n0) * omega * s.amplitudes()[f * d + n0];
  }
  return grid;
}

ProbabilityGrid run_complete_square(const CircuitSpec& spec, const EquilibriumState& state) {
  require_mode(spec, CircuitMode::kCompleteSquare, "run_complete_square");
  check_state(spec, state);
  const std::size_t n = spec.grid_size();
  ProbabilityGrid out;
  out.omega_product = spec.chain.omega_product();
  out.p = RealGrid{spec.registers(), n, std::vector<double>(checked_power(n, spec.registers(), kMaxAmplitudes), 0.0)};
  for (std::size_t n0 : state.support()) {
    const GqpeState s = run_circuit(with_initial(spec, n0));
    const std::size_t d = s.sys_dim();
    const double rho = state.weight(n0);
    for (std::size_t f = 0; f < out.p.values.size(); ++f) {
      double m = 0.0;
      for (std::size_t k = 0; k < d; ++k) m += std::norm(s.amplitudes()[f * d + k]);
      out.p.values[f] += rho * m;
    }
    out.leaked_norm += rho * s.leaked_norm();
  }
  return out;
}

long long raman_residual_bins(const CircuitSpec& spec, std::size_t n0) {
  const double n = static_cast<double>(spec.grid_size());
  const double residual = spec.system.eigenvalue(n0) - spec.energy_shift.value_or(0.0);
  const double bins = residual * n / kTwoPi;
  const double rounded = std::round(bins);
  if (std::abs(bins - rounded) > 1e-9)
    fail(ErrorCode::kEnergyShiftOffGrid,
         "lambda_n0 - E = " + std::to_string(residual) + " is not a multiple of 2 pi / N");
  return static_cast<long long>(rounded);
}

std::pair<std::size_t, std::size_t> raman_indices(std::size_t k1, std::size_t k2, long long residual,
                                                  std::size_t n) {
  const auto nn = static_cast<long long>(n);
  auto mod = [nn](long long v) { return static_cast<std::size_t>(((v % nn) + nn) % nn); };
  const auto a = static_cast<long long>(k1);
  const auto b = static_cast<long long>(k2);
  return {mod(b + residual), mod(b - a)};
}

RamanResult run_raman(const CircuitSpec& spec, const EquilibriumState& state) {
  require_mode(spec, CircuitMode::kRaman, "run_raman");
  check_state(spec, state);
  const std::size_t n = spec.grid_size();
  const auto& mu = spec.chain.at(1);
  RamanResult out;
  out.raw.p = RealGrid{2, n, std::vector<double>(n * n, 0.0)};
  out.raw.omega_product = spec.chain.omega_product();
  out.chi3 = RealGrid{2, n, std::vector<double>(n * n, 0.0)};
  for (std::size_t n0 : state.support()) {
    const long long residual = raman_residual_bins(spec, n0);
    double scale = spec.chain.omega_product();
    if (spec.prepared_dipole) {
      ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(spec.system.dim()));
      e(static_cast<Eigen::Index>(n0)) = 1.0;
      scale = spec.chain.at(0).one_norm() * (mu.matrix() * e).norm();
      if (state.is_pure()) out.raw.omega_product = scale;
    }
    const GqpeState s = run_circuit(with_initial(spec, n0));
    const std::size_t d = s.sys_dim();
    const double rho = state.weight(n0);
    for (std::size_t k1 = 0; k1 < n; ++k1) {
      for (std::size_t k2 = 0; k2 < n; ++k2) {
        const std::size_t f = k1 * n + k2;
        double m = 0.0;
        for (std::size_t k = 0; k < d; ++k) m += std::norm(s.amplitudes()[f * d + k]);
        out.raw.p.values[f] += rho * m;
        const auto [ki, ks] = raman_indices(k1, k2, residual, n);
        out.chi3.values[ki * n + ks] += rho * scale * scale * m;
      }
    }
    out.raw.leaked_norm += rho * s.leaked_norm();
  }
  return out;
}

Histogram sample_frequencies(const ProbabilityGrid& grid, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) fail(ErrorCode::kInvalidParameter, "shots must be >= 1");
  Histogram h;
  h.order = grid.p.order;
  h.n = grid.p.n;
  h.shots = shots;
  h.counts.assign(grid.p.values.size(), 0);
  std::vector<double> cdf(grid.p.values.size() + 1);
  double acc = 0.0;
  for (std::size_t i = 0; i < grid.p.values.size(); ++i) {
    acc += std::max(0.0, grid.p.values[i]);
    cdf[i] = acc;
  }
  acc += std::max(0.0, grid.leaked_norm);
  cdf.back() = acc;
  if (!(acc > 0)) fail(ErrorCode::kInvalidParameter, "probability grid has no mass");
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const std::size_t i = rng.from_cdf(cdf);
    if (i == grid.p.values.size()) {
      ++h.failures;
    } else {
      ++h.counts[i];
    }
  }
  return h;
}

std::pair<double, double> real_imag_separation(const CircuitSpec& spec,
                                               std::span<const std::size_t> omega_indices) {
  require_mode(spec, CircuitMode::kGeneral, "real_imag_separation");
  CircuitSpec fwd = spec;
  fwd.conjugate = false;
  CircuitSpec conj = spec;
  conj.conjugate = true;
  const Complex a = run_circuit(fwd).amplitude(omega_indices, spec.initial);
  const Complex b = run_circuit(conj).amplitude(omega_indices, spec.initial);
  const double omega = spec.chain.omega_product();
  return {omega * std::abs((a + b) / 2.0), omega * std::abs((a - b) / 2.0)};
}

}  // namespace gqpe::sim
