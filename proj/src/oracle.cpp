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

#include "gqpe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace gqpe::oracle {

namespace {

void check_dims(const QuantumSystem& system, const EquilibriumState& state, std::size_t op_dim) {
  if (state.dim() != system.dim() || op_dim != system.dim())
    fail(ErrorCode::kDimensionMismatch,
         "system dim " + std::to_string(system.dim()) + ", state dim " +
             std::to_string(state.dim()) + ", operator dim " + std::to_string(op_dim));
}

void check_shapes(std::span<const Lineshape> shapes, int order, std::size_t n) {
  if (shapes.size() != static_cast<std::size_t>(order))
    fail(ErrorCode::kShapeCountMismatch, "expected " + std::to_string(order) + " lineshapes, got " +
                                             std::to_string(shapes.size()));
  for (const auto& s : shapes)
    if (s.size() != n) fail(ErrorCode::kInvalidSpec, "lineshape size differs from grid N");
}

// Per-axis values L_j(delta - 2 pi m / N), m = 0..N-1.
void axis_values(const Lineshape& shape, double delta, std::size_t n, std::vector<Complex>& out) {
  out.resize(n);
  for (std::size_t m = 0; m < n; ++m)
    out[m] = shape.evaluate(delta - kTwoPi * static_cast<double>(m) / static_cast<double>(n));
}

}  // namespace

double Correlator::omega_product() const {
  double omega = 1.0;
  for (const auto& f : factors) omega *= f.op.one_norm();
  return omega;
}

Correlator chain_correlator(const OperatorChain& chain) {
  Correlator c;
  c.order = chain.order();
  const int d = c.order;
  for (int i = 0; i <= d; ++i) {
    Factor f{chain.at(static_cast<std::size_t>(i)), std::vector<int>(static_cast<std::size_t>(d), 0)};
    // V^(i) carries t_{D-i}; V^(D) acts at time zero.
    if (i < d) f.time_coefficients[static_cast<std::size_t>(d - i - 1)] = 1;
    c.factors.push_back(std::move(f));
  }
  return c;
}

DeltaComb delta_comb(const QuantumSystem& system, const EquilibriumState& state,
                     const OperatorChain& chain) {
  return delta_comb(system, state, chain_correlator(chain));
}

DeltaComb delta_comb(const QuantumSystem& system, const EquilibriumState& state,
                     const Correlator& correlator) {
  if (correlator.factors.empty()) fail(ErrorCode::kInvalidSpec, "empty correlator");
  for (const auto& f : correlator.factors) {
    check_dims(system, state, f.op.dim());
    if (f.time_coefficients.size() != static_cast<std::size_t>(correlator.order))
      fail(ErrorCode::kInvalidSpec, "time coefficient vector length differs from order");
  }
  const auto delta = delta_grid(system);
  const std::size_t d = system.dim();
  const std::size_t m = correlator.factors.size();
  const auto order = static_cast<std::size_t>(correlator.order);

  DeltaComb comb;
  comb.order = correlator.order;
  std::vector<std::size_t> idx(m + 1);
  std::function<void(std::size_t, Complex)> visit = [&](std::size_t i, Complex partial) {
    // idx[0..i-1] fixed; factor i-1 couples idx[i-1] -> idx[i].
    if (partial == Complex(0.0)) return;
    if (i == m) {
      const Complex w = partial * correlator.factors[m - 1].op(idx[m - 1], idx[m]);
      if (std::abs(w) < kWeightFloor) return;
      Line line{std::vector<double>(order, 0.0), w};
      for (std::size_t f = 0; f < m; ++f) {
        const double df = delta(static_cast<Eigen::Index>(idx[f]), static_cast<Eigen::Index>(idx[f + 1]));
        for (std::size_t j = 0; j < order; ++j)
          line.delta[j] += correlator.factors[f].time_coefficients[j] * df;
      }
      comb.lines.push_back(std::move(line));
      return;
    }
    for (std::size_t a = 0; a < d; ++a) {
      idx[i] = a;
      visit(i + 1, partial * correlator.factors[i - 1].op(idx[i - 1], a));
    }
  };
  for (std::size_t n0 : state.support()) {
    idx[0] = n0;
    idx[m] = n0;
    if (m == 1) {
      const Complex w = correlator.sign * state.weight(n0) * correlator.factors[0].op(n0, n0);
      if (std::abs(w) >= kWeightFloor) comb.lines.push_back(Line{std::vector<double>(order, 0.0), w});
      continue;
    }
    visit(1, Complex(correlator.sign * state.weight(n0)));
  }
  return comb;
}

Complex correlation_value(const QuantumSystem& system, const EquilibriumState& state,
                          const Correlator& correlator, std::span<const double> times) {
  if (times.size() != static_cast<std::size_t>(correlator.order))
    fail(ErrorCode::kInvalidSpec, "time vector length differs from order");
  const auto d = static_cast<Eigen::Index>(system.dim());
  ComplexMatrix product = ComplexMatrix::Identity(d, d);
  for (const auto& f : correlator.factors) {
    check_dims(system, state, f.op.dim());
    double tau = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j) tau += f.time_coefficients[j] * times[j];
    const ComplexVector p = system.phases(tau);
    const ComplexMatrix oi = p.asDiagonal() * f.op.matrix() * p.conjugate().asDiagonal();
    product = product * oi;
  }
  Complex value = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) value += state.weight(static_cast<std::size_t>(n)) * product(n, n);
  return correlator.sign * value;
}

ResponseGrid broadened_response(const DeltaComb& comb, std::span<const Lineshape> shapes,
                                std::size_t n, double omega_product) {
  check_shapes(shapes, comb.order, n);
  ResponseGrid grid(comb.order, n, omega_product);
  const auto order = static_cast<std::size_t>(comb.order);
  std::vector<std::vector<Complex>> per_axis(order);
  std::vector<Complex> term, next;
  for (const auto& line : comb.lines) {
    for (std::size_t j = 0; j < order; ++j) axis_values(shapes[j], line.delta[j], n, per_axis[j]);
    term.assign(1, line.weight);
    for (std::size_t j = 0; j < order; ++j) {
      next.resize(term.size() * n);
      for (std::size_t a = 0; a < term.size(); ++a)
        for (std::size_t k = 0; k < n; ++k) next[a * n + k] = term[a] * per_axis[j][k];
      term.swap(next);
    }
    for (std::size_t f = 0; f < term.size(); ++f) grid[f] += term[f];
  }
  return grid;
}

ResponseGrid linear_absorption(const QuantumSystem& system, const EquilibriumState& state,
                               const PerturbationOperator& dipole, const Lineshape& shape,
                               std::size_t n) {
  if (!dipole.is_hermitian()) fail(ErrorCode::kNonHermitianInput, "dipole must be Hermitian");
  const OperatorChain chain({dipole, dipole});
  const Lineshape shapes[] = {shape};
  return broadened_response(delta_comb(system, state, chain), shapes, n, chain.omega_product());
}

RealGrid complete_square_response(const QuantumSystem& system, const EquilibriumState& state,
                                  const OperatorChain& chain, std::span<const Lineshape> shapes,
                                  std::size_t n) {
  const int order = chain.order();
  if (order < 1) fail(ErrorCode::kInvalidSpec, "complete-square response needs D >= 1");
  check_shapes(shapes, order, n);
  for (const auto& op : chain.ops()) check_dims(system, state, op.dim());
  const auto delta = delta_grid(system);
  const std::size_t d = system.dim();
  const auto dd = static_cast<std::size_t>(order);

  RealGrid out{order, n, std::vector<double>(checked_power(n, order, std::size_t{1} << 26), 0.0)};
  std::vector<std::size_t> idx(dd + 2);
  for (std::size_t n0 : state.support()) {
    for (std::size_t s = 0; s < d; ++s) {
      // Chain indices a_0 = s (open), a_1..a_D free, a_{D+1} = n0.
      DeltaComb comb;
      comb.order = order;
      std::function<void(std::size_t, Complex)> visit = [&](std::size_t i, Complex partial) {
        if (partial == Complex(0.0)) return;
        if (i == dd + 1) {
          const Complex w = partial * chain.at(dd)(idx[dd], n0);
          if (std::abs(w) < kWeightFloor) return;
          Line line{std::vector<double>(dd, 0.0), w};
          for (std::size_t f = 0; f < dd; ++f)
            line.delta[dd - f - 1] =
                delta(static_cast<Eigen::Index>(idx[f]), static_cast<Eigen::Index>(idx[f + 1]));
          comb.lines.push_back(std::move(line));
          return;
        }
        for (std::size_t a = 0; a < d; ++a) {
          idx[i] = a;
          visit(i + 1, partial * chain.at(i - 1)(idx[i - 1], a));
        }
      };
      idx[0] = s;
      visit(1, Complex(1.0));
      if (comb.lines.empty()) continue;
      const ResponseGrid rs = broadened_response(comb, shapes, n);
      for (std::size_t f = 0; f < rs.point_count(); ++f) out.values[f] += state.weight(n0) * std::norm(rs[f]);
    }
  }
  return out;
}

RealGrid raman_chi3(const QuantumSystem& system, const EquilibriumState& state,
                    const PerturbationOperator& dipole, const Lineshape& shape_int,
                    const Lineshape& shape_f, std::size_t n) {
  check_dims(system, state, dipole.dim());
  if (!dipole.is_hermitian()) fail(ErrorCode::kNonHermitianInput, "dipole must be Hermitian");
  if (shape_int.size() != n || shape_f.size() != n)
    fail(ErrorCode::kInvalidSpec, "lineshape size differs from grid N");
  const auto delta = delta_grid(system);
  const std::size_t d = system.dim();
  auto omega = [n](std::size_t k) { return kTwoPi * static_cast<double>(k) / static_cast<double>(n); };

  RealGrid out{2, n, std::vector<double>(n * n, 0.0)};
  for (std::size_t n0 : state.support()) {
    const auto i0 = static_cast<Eigen::Index>(n0);
    // l_int[n1][kI] = L_int(Delta[n0][n1] - w_I)
    std::vector<std::vector<Complex>> l_int(d, std::vector<Complex>(n));
    for (std::size_t n1 = 0; n1 < d; ++n1)
      for (std::size_t ki = 0; ki < n; ++ki)
        l_int[n1][ki] = shape_int.evaluate(delta(i0, static_cast<Eigen::Index>(n1)) - omega(ki));
    for (std::size_t n2 = 0; n2 < d; ++n2) {
      std::vector<Complex> mid(n, 0.0);  // sum_n1 mu mu L_int, per w_I
      for (std::size_t n1 = 0; n1 < d; ++n1) {
        const Complex mm = dipole(n2, n1) * dipole(n1, n0);
        if (mm == Complex(0.0)) continue;
        for (std::size_t ki = 0; ki < n; ++ki) mid[ki] += mm * l_int[n1][ki];
      }
      const double d02 = delta(i0, static_cast<Eigen::Index>(n2));
      for (std::size_t ki = 0; ki < n; ++ki) {
        if (mid[ki] == Complex(0.0)) continue;
        for (std::size_t ks = 0; ks < n; ++ks) {
          const Complex amp = mid[ki] * shape_f.evaluate(d02 - omega(ki) + omega(ks));
          out.values[ki * n + ks] += state.weight(n0) * std::norm(amp);
        }
      }
    }
  }
  return out;
}

Correlator nested_path(const PerturbationOperator& a, const PerturbationOperator& v, int order,
                       std::span<const Side> choices) {
  if (order < 1) fail(ErrorCode::kInvalidParameter, "order must be >= 1");
  if (choices.size() != static_cast<std::size_t>(order))
    fail(ErrorCode::kInvalidParameter, "need one side choice per commutator level");
  const auto dd = static_cast<std::size_t>(order);
  // s_m = t_1 + ... + t_m
  auto time_sum = [dd](int m) {
    std::vector<int> c(dd, 0);
    for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] = 1;
    return c;
  };
  std::vector<Factor> left, right;
  Correlator c;
  c.order = order;
  for (int k = 1; k <= order; ++k) {
    Factor f{v, time_sum(order - k)};
    if (choices[static_cast<std::size_t>(k - 1)] == Side::kRight) {
      right.push_back(std::move(f));
    } else {
      left.push_back(std::move(f));
      c.sign = -c.sign;
    }
  }
  for (auto it = left.rbegin(); it != left.rend(); ++it) c.factors.push_back(*it);
  c.factors.push_back(Factor{a, time_sum(order)});
  for (auto& f : right) c.factors.push_back(std::move(f));
  return c;
}

NestedResponse nested_commutator_response(const QuantumSystem& system,
                                          const EquilibriumState& state,
                                          const PerturbationOperator& a,
                                          const PerturbationOperator& v, int order,
                                          std::span<const Lineshape> shapes, std::size_t n) {
  if (order > kMaxNestedOrder)
    fail(ErrorCode::kOrderTooLarge, "nested commutators limited to D <= 3");
  if (order < 1) fail(ErrorCode::kInvalidParameter, "order must be >= 1");
  check_shapes(shapes, order, n);
  const std::size_t count = std::size_t{1} << order;

  NestedResponse out;
  out.total = ResponseGrid(order, n, a.one_norm() * std::pow(v.one_norm(), order));
  for (std::size_t mask = 0; mask < count; ++mask) {
    std::vector<Side> choices(static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) choices[static_cast<std::size_t>(k)] = (mask >> k) & 1 ? Side::kLeft : Side::kRight;
    Correlator c = nested_path(a, v, order, choices);
    ResponseGrid g = broadened_response(delta_comb(system, state, c), shapes, n, c.omega_product());
    for (std::size_t f = 0; f < g.point_count(); ++f) out.total[f] += g[f];
    out.paths.push_back(std::move(g));
    out.correlators.push_back(std::move(c));
    out.partner.push_back(mask ^ (count - 1));
  }

  // Pairing holds for Hermitian A and V: C_partner(t) = (-1)^D conj(C(t)).
  out.pairing_verified = false;
  if (a.is_hermitian(1e-12) && v.is_hermitian(1e-12)) {
    const double parity = (order % 2 == 0) ? 1.0 : -1.0;
    const double probes[3][3] = {{0.37, 1.21, 2.9}, {3.3, 0.05, 1.7}, {5.5, 4.25, 0.8}};
    bool ok = true;
    for (std::size_t p = 0; p < count && ok; ++p) {
      for (const auto& probe : probes) {
        std::span<const double> t(probe, static_cast<std::size_t>(order));
        const Complex ca = correlation_value(system, state, out.correlators[p], t);
        const Complex cb = correlation_value(system, state, out.correlators[out.partner[p]], t);
        if (std::abs(cb - parity * std::conj(ca)) > 1e-10) ok = false;
      }
    }
    out.pairing_verified = ok;
  }
  return out;
}

std::vector<double> periodic_hilbert(std::span<const double> f) {
  const std::size_t n = f.size();
  if (n < 2 || n % 2 != 0) fail(ErrorCode::kInvalidParameter, "periodic Hilbert transform needs an even length");
  // Odd offsets only: exact on trigonometric polynomials of degree < N/2.
  std::vector<double> h(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t m = (j + 1) % 2; m < n; m += 2) {
      const double x = kPi * (static_cast<double>(j) - static_cast<double>(m)) / static_cast<double>(n);
      s += f[m] / std::tan(x);
    }
    h[j] = 2.0 * s / static_cast<double>(n);
  }
  return h;
}

double kk_residual(const ResponseGrid& grid, double axis_eta) {
  if (grid.order() != 1) fail(ErrorCode::kDimensionMismatch, "KK residual needs a 1-D grid");
  const std::size_t n = grid.size_per_axis();
  if (!(axis_eta > kTwoPi / static_cast<double>(n)))
    fail(ErrorCode::kInvalidParameter, "axis_eta must exceed the grid spacing 2 pi / N");
  double peak = 0.0;
  std::vector<double> re(n), im(n);
  for (std::size_t k = 0; k < n; ++k) {
    re[k] = grid[k].real();
    im[k] = grid[k].imag();
    peak = std::max(peak, std::abs(grid[k]));
  }
  if (peak == 0.0) return 0.0;
  const double mean_re = std::accumulate(re.begin(), re.end(), 0.0) / static_cast<double>(n);
  const auto h_im = periodic_hilbert(im);
  const auto h_re = periodic_hilbert(re);
  double dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    dev = std::max(dev, std::abs((re[k] - mean_re) - h_im[k]));
    dev = std::max(dev, std::abs(im[k] + h_re[k]));
  }
  return dev / peak;
}

}  // namespace gqpe::oracle
