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

#include "gqpe/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gqpe::sampling {

namespace {

constexpr std::uint64_t kMaxShots = 2'000'000'000ULL;

std::uint64_t ceil_count(double m) {
  if (!(m < static_cast<double>(kMaxShots)))
    fail(ErrorCode::kResourceLimit, "requested sample count exceeds the desk-scale limit");
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(m)));
}

std::vector<double> state_cdf(const EquilibriumState& state) {
  std::vector<double> cdf(state.dim());
  double acc = 0.0;
  for (std::size_t n = 0; n < state.dim(); ++n) cdf[n] = (acc += state.weight(n));
  return cdf;
}

std::size_t draw_n0(const EquilibriumState& state, const std::vector<double>& cdf, Rng& rng) {
  return state.is_pure() ? state.pure_index() : rng.from_cdf(cdf);
}

int draw_outcome(double expectation, Rng& rng) {
  return rng.uniform() < (1.0 + expectation) / 2.0 ? 1 : -1;
}

// Accumulates term * prod_j e^{-2 pi i m_j k_j / N} over the grid.
void accumulate(ResponseGrid& grid, const std::vector<Complex>& roots, std::span<const int> k,
                Complex term, std::vector<Complex>& buf, std::vector<Complex>& next) {
  const std::size_t n = grid.size_per_axis();
  buf.assign(1, term);
  for (int kj : k) {
    const auto kk = static_cast<std::size_t>(kj) % n;
    next.resize(buf.size() * n);
    for (std::size_t a = 0; a < buf.size(); ++a)
      for (std::size_t m = 0; m < n; ++m) next[a * n + m] = buf[a] * roots[(m * kk) % n];
    buf.swap(next);
  }
  for (std::size_t f = 0; f < buf.size(); ++f) grid[f] += buf[f];
}

std::vector<Complex> roots_of_unity(std::size_t n) {
  std::vector<Complex> r(n);
  for (std::size_t m = 0; m < n; ++m)
    r[m] = std::polar(1.0, -kTwoPi * static_cast<double>(m) / static_cast<double>(n));
  return r;
}

}  // namespace

void check_accuracy(double eps) {
  if (!(eps > 0 && eps < 1)) fail(ErrorCode::kInvalidAccuracy, "accuracy must lie in (0, 1)");
}

EstimatorReport estimate_point(const sim::CircuitSpec& spec,
                               std::span<const std::size_t> omega_indices, double eps,
                               std::uint64_t seed) {
  check_accuracy(eps);
  if (spec.mode != sim::CircuitMode::kGeneral)
    fail(ErrorCode::kWrongMode, "protocol 1 runs on the general circuit");
  const sim::GqpeState state = sim::run_circuit(spec);
  const Complex exact = sim::response_amplitude(state, spec, omega_indices);
  const double omega = spec.chain.omega_product();
  Rng rng(seed);
  // Noise eps/Omega on the amplitude, scaled back by Omega.
  const double g1 = rng.normal();
  const double g2 = rng.normal();
  EstimatorReport r;
  r.target = EstimatorReport::Target::kPoint;
  r.point.assign(omega_indices.begin(), omega_indices.end());
  r.point_estimate = exact + omega * (eps / omega) * Complex(g1, g2) / std::sqrt(2.0);
  r.accuracy = eps;
  r.samples = 1;
  r.seed = seed;
  r.empirical_error = std::abs(r.point_estimate - exact);
  r.omega_product = omega;
  r.block_encoding_queries = omega / eps;
  r.evolution_queries = 2.0 * spec.registers() * static_cast<double>(spec.grid_size() - 1) * omega / eps;
  return r;
}

std::uint64_t default_shot_count(double omega, double eps, double c) {
  check_accuracy(eps);
  if (!(c > 0)) fail(ErrorCode::kInvalidParameter, "shot constant must be > 0");
  const double ratio = omega / eps;
  return ceil_count(c * ratio * ratio * ratio * ratio);
}

EstimatorReport estimate_distribution(const sim::CircuitSpec& spec, double eps, std::uint64_t seed,
                                      double c) {
  check_accuracy(eps);
  const double omega = spec.chain.omega_product();
  const std::uint64_t shots = default_shot_count(omega, eps, c);

  sim::ProbabilityGrid grid;
  if (spec.mode == sim::CircuitMode::kCompleteSquare) {
    grid = sim::run_complete_square(spec, EquilibriumState::pure(spec.system.dim(), spec.initial));
  } else if (spec.mode == sim::CircuitMode::kGeneral) {
    const sim::GqpeState s = sim::run_circuit(spec);
    const std::size_t d = s.sys_dim();
    grid.omega_product = omega;
    grid.p = RealGrid{spec.registers(), spec.grid_size(), std::vector<double>(s.branch_count(), 0.0)};
    double total = 0.0;
    for (std::size_t f = 0; f < s.branch_count(); ++f) {
      grid.p.values[f] = std::norm(s.amplitudes()[f * d + spec.initial]);
      total += grid.p.values[f];
    }
    // Everything off the (w, n0) outcomes, including block-encoding failure.
    grid.leaked_norm = std::max(0.0, 1.0 - total);
  } else {
    fail(ErrorCode::kWrongMode, "protocol 2 runs on the general or complete-square circuit");
  }

  const sim::Histogram h = sim::sample_frequencies(grid, shots, seed);
  EstimatorReport r;
  r.target = EstimatorReport::Target::kGrid;
  r.estimate = ResponseGrid(spec.registers(), spec.grid_size(), omega);
  r.per_bin_error.resize(h.counts.size());
  for (std::size_t f = 0; f < h.counts.size(); ++f) {
    const double p = static_cast<double>(h.counts[f]) / static_cast<double>(shots);
    r.estimate[f] = omega * std::sqrt(p);
    // Delta method for sqrt(p); 1/(2 sqrt(M)) when the bin is empty.
    r.per_bin_error[f] = omega * std::sqrt(std::max(1.0 - p, 0.0) / (4.0 * static_cast<double>(shots)));
  }
  r.accuracy = eps;
  r.samples = shots;
  r.seed = seed;
  r.failures = h.failures;
  r.omega_product = omega;
  r.block_encoding_queries = static_cast<double>(shots);
  r.evolution_queries = 2.0 * spec.registers() * static_cast<double>(spec.grid_size() - 1) * static_cast<double>(shots);
  return r;
}

TimeSampleDistribution::TimeSampleDistribution(std::vector<std::vector<double>> weights)
    : weights_(std::move(weights)) {
  p_tot_ = 1.0;
  for (const auto& w : weights_) {
    std::vector<double> cdf(w.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) cdf[k] = (acc += w[k]);
    if (!(acc > 0)) fail(ErrorCode::kInvalidParameter, "time weights have no mass");
    p_tot_ *= acc;
    k_max_ = std::max(k_max_, w.size() - 1);
    cdf_.push_back(std::move(cdf));
  }
}

TimeSampleDistribution TimeSampleDistribution::from_lineshapes(std::span<const Lineshape> shapes) {
  if (shapes.empty()) fail(ErrorCode::kInvalidParameter, "need at least one lineshape");
  std::vector<std::vector<double>> w;
  for (const auto& s : shapes) {
    if (!s.real_nonnegative())
      fail(ErrorCode::kNegativeLineshapeWeight, "time weights must be real and nonnegative");
    const double inv = 1.0 / std::sqrt(static_cast<double>(s.size()));
    std::vector<double> l(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) l[k] = s.coefficients()[k].real() * inv;
    w.push_back(std::move(l));
  }
  return TimeSampleDistribution(std::move(w));
}

TimeSampleDistribution TimeSampleDistribution::lorentzian(double eta, int order, double tail) {
  if (!(eta > 0)) fail(ErrorCode::kInvalidParameter, "eta must be > 0");
  if (order < 1) fail(ErrorCode::kInvalidParameter, "order must be >= 1");
  if (!(tail > 0 && tail < 1)) fail(ErrorCode::kInvalidParameter, "tail must lie in (0, 1)");
  // Tail fraction beyond K is e^{-eta (K + 1)}.
  const auto k_max = static_cast<std::size_t>(std::ceil(std::log(1.0 / tail) / eta));
  std::vector<double> l(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) l[k] = std::exp(-eta * static_cast<double>(k));
  return TimeSampleDistribution(std::vector<std::vector<double>>(static_cast<std::size_t>(order), l));
}

double TimeSampleDistribution::mean_length() const {
  double total = 0.0;
  for (const auto& w : weights_) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      num += static_cast<double>(k) * w[k];
      den += w[k];
    }
    total += num / den;
  }
  return total;
}

std::vector<int> sample_times(const TimeSampleDistribution& dist, Rng& rng) {
  std::vector<int> k(static_cast<std::size_t>(dist.order()));
  for (int j = 0; j < dist.order(); ++j) k[static_cast<std::size_t>(j)] = static_cast<int>(rng.from_cdf(dist.cdf(j)));
  return k;
}

std::vector<int> sample_times(const TimeSampleDistribution& dist, std::uint64_t seed) {
  Rng rng(seed);
  return sample_times(dist, rng);
}

Complex scaled_correlation(const QuantumSystem& system, std::size_t n0, const Correlator& correlator,
                           std::span<const int> k) {
  if (k.size() != static_cast<std::size_t>(correlator.order))
    fail(ErrorCode::kInvalidSpec, "time vector length differs from order");
  for (int kj : k)
    if (kj < 0) fail(ErrorCode::kNegativeTime, "times must be >= 0");
  const auto d = static_cast<Eigen::Index>(system.dim());
  ComplexVector v = ComplexVector::Zero(d);
  v(static_cast<Eigen::Index>(n0)) = 1.0;
  for (auto it = correlator.factors.rbegin(); it != correlator.factors.rend(); ++it) {
    if (it->op.dim() != system.dim()) fail(ErrorCode::kDimensionMismatch, "operator dim differs from system");
    double tau = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) tau += it->time_coefficients[j] * static_cast<double>(k[j]);
    const ComplexVector p = system.phases(tau);
    v = p.conjugate().cwiseProduct(v);
    v = it->op.matrix() * v / it->op.one_norm();
    v = p.cwiseProduct(v);
  }
  return correlator.sign * v(static_cast<Eigen::Index>(n0));
}

int hadamard_test(const QuantumSystem& system, const EquilibriumState& state,
                  const Correlator& correlator, std::span<const int> k, Part part, Rng& rng) {
  for (int kj : k)
    if (kj < 0) fail(ErrorCode::kNegativeTime, "times must be >= 0");
  const std::size_t n0 = draw_n0(state, state_cdf(state), rng);
  const Complex c = scaled_correlation(system, n0, correlator, k);
  return draw_outcome(part == Part::kReal ? c.real() : c.imag(), rng);
}

int hadamard_test(const QuantumSystem& system, const EquilibriumState& state,
                  const OperatorChain& chain, std::span<const int> k, Part part, std::uint64_t seed) {
  Rng rng(seed);
  return hadamard_test(system, state, oracle::chain_correlator(chain), k, part, rng);
}

double max_norm_constant(std::size_t grid_points, double delta) {
  if (!(delta > 0 && delta < 1)) fail(ErrorCode::kInvalidParameter, "delta must lie in (0, 1)");
  return 2.0 * std::log(static_cast<double>(std::max<std::size_t>(grid_points, 1)) / delta);
}

EstimatorReport single_ancilla_estimate(const QuantumSystem& system, const EquilibriumState& state,
                                        const Correlator& correlator,
                                        const TimeSampleDistribution& dist, std::size_t n,
                                        double eps, std::uint64_t seed,
                                        const SingleAncillaOptions& options) {
  check_accuracy(eps);
  if (dist.order() != correlator.order)
    fail(ErrorCode::kShapeCountMismatch, "time distribution order differs from correlator order");
  if (state.dim() != system.dim()) fail(ErrorCode::kDimensionMismatch, "state dim differs from system");
  if (n < 1) fail(ErrorCode::kInvalidParameter, "grid size must be >= 1");
  const double omega = correlator.omega_product();
  const double scale = omega * dist.p_tot();

  EstimatorReport r;
  r.target = EstimatorReport::Target::kGrid;
  r.estimate = ResponseGrid(correlator.order, n, omega);
  const std::size_t points = r.estimate.point_count();
  const double c = options.c.value_or(max_norm_constant(points));
  const std::uint64_t rounds = options.rounds ? *options.rounds : ceil_count(c * scale * scale / (eps * eps));
  if (rounds < 1) fail(ErrorCode::kInvalidParameter, "need at least one round");

  const auto cdf = state_cdf(state);
  const auto roots = roots_of_unity(n);
  std::vector<Complex> buf, next;
  double length_total = 0.0;
  if (options.keep_samples) r.per_sample.reserve(rounds);
  for (std::uint64_t m = 0; m < rounds; ++m) {
    Rng rng(derive_seed(seed, m));
    const std::vector<int> k = sample_times(dist, rng);
    const std::size_t n0 = draw_n0(state, cdf, rng);
    const Complex cv = scaled_correlation(system, n0, correlator, k);
    const double x = draw_outcome(cv.real(), rng);
    const double y = draw_outcome(cv.imag(), rng);
    accumulate(r.estimate, roots, k, Complex(x, y), buf, next);
    length_total += std::accumulate(k.begin(), k.end(), 0.0);
    if (options.keep_samples) r.per_sample.push_back(Sample{k, x, y});
  }
  for (auto& v : r.estimate.values()) v *= scale / static_cast<double>(rounds);

  r.accuracy = eps;
  r.samples = rounds;
  r.seed = seed;
  r.omega_product = omega;
  r.p_tot = dist.p_tot();
  r.mean_evolution_length = length_total / static_cast<double>(rounds);
  r.block_encoding_queries = 2.0 * static_cast<double>(rounds);
  // Controlled C(t) uses forward and backward evolution per factor time.
  r.evolution_queries = 2.0 * length_total * 2.0;
  return r;
}

EstimatorReport single_ancilla_estimate(const QuantumSystem& system, const EquilibriumState& state,
                                        const OperatorChain& chain,
                                        std::span<const Lineshape> shapes, std::size_t n,
                                        double eps, std::uint64_t seed,
                                        const SingleAncillaOptions& options) {
  if (shapes.size() != static_cast<std::size_t>(chain.order()))
    fail(ErrorCode::kShapeCountMismatch, "need one lineshape per register");
  const auto dist = TimeSampleDistribution::from_lineshapes(shapes);
  return single_ancilla_estimate(system, state, oracle::chain_correlator(chain), dist, n, eps, seed,
                                 options);
}

EstimatorReport conjugate_pair_projection(const EstimatorReport& report, int order) {
  if (report.target != EstimatorReport::Target::kGrid || report.estimate.order() != order)
    fail(ErrorCode::kInvalidParameter, "projection needs a grid report of the same order");
  if (report.per_sample.size() != report.samples)
    fail(ErrorCode::kInvalidParameter, "projection needs the per-sample terms (keep_samples)");
  EstimatorReport out = report;
  const bool keep_real = order % 2 == 0;
  out.estimate = ResponseGrid(order, report.estimate.size_per_axis(), report.omega_product);
  const auto roots = roots_of_unity(report.estimate.size_per_axis());
  std::vector<Complex> buf, next;
  for (auto& s : out.per_sample) {
    if (keep_real) {
      s.y = 0.0;
    } else {
      s.x = 0.0;
    }
    accumulate(out.estimate, roots, s.k, Complex(s.x, s.y), buf, next);
  }
  const double scale = 2.0 * report.omega_product * report.p_tot / static_cast<double>(report.samples);
  for (auto& v : out.estimate.values()) v *= scale;
  out.pair_summed = true;
  return out;
}

}  // namespace gqpe::sampling
