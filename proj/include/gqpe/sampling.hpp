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

#ifndef GQPE_SAMPLING_HPP_
#define GQPE_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gqpe/circuit.hpp"
#include "gqpe/common.hpp"
#include "gqpe/grid.hpp"
#include "gqpe/lineshape.hpp"
#include "gqpe/oracle.hpp"
#include "gqpe/random.hpp"
#include "gqpe/spectral.hpp"

namespace gqpe::sampling {

using lineshape::Lineshape;
using oracle::Correlator;
using spectral::EquilibriumState;
using spectral::OperatorChain;
using spectral::QuantumSystem;

struct Sample {
  std::vector<int> k;
  double x = 0.0;
  double y = 0.0;
};

struct EstimatorReport {
  enum class Target { kPoint, kGrid };
  Target target = Target::kGrid;
  // Point targets fill a 1-point-per-axis view: point holds the indices and
  // point_estimate the value; grid targets fill estimate.
  std::vector<std::size_t> point;
  Complex point_estimate = 0.0;
  ResponseGrid estimate;
  double accuracy = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<double> empirical_error;

  double omega_product = 1.0;
  double p_tot = 1.0;
  // Cost model: block-encoding / state-preparation queries and e^{+-iH} calls.
  double block_encoding_queries = 0.0;
  double evolution_queries = 0.0;
  // Mean sum_i k_i per Monte Carlo round.
  double mean_evolution_length = 0.0;
  // Protocol 2: failure shots and one-sigma |R| error per bin.
  std::uint64_t failures = 0;
  std::vector<double> per_bin_error;
  // Single-ancilla terms, kept for conjugate_pair_projection.
  std::vector<Sample> per_sample;
  bool pair_summed = false;
};

void check_accuracy(double eps);

// Protocol 1, amplitude estimation emulated as a cost model: the exact
// amplitude plus complex Gaussian noise of rms eps, and Omega/eps queries.
EstimatorReport estimate_point(const sim::CircuitSpec& spec,
                               std::span<const std::size_t> omega_indices, double eps,
                               std::uint64_t seed);

// ceil(c * Omega^4 / eps^4)
std::uint64_t default_shot_count(double omega, double eps, double c = 1.0);

// Protocol 2 over the whole grid; |R| = Omega sqrt(frequency). General mode
// measures |amp(w, n0)|^2, complete-square mode the system marginal.
EstimatorReport estimate_distribution(const sim::CircuitSpec& spec, double eps, std::uint64_t seed,
                                      double c = 1.0);

class TimeSampleDistribution {
 public:
  // l(k) = alpha_k / sqrt(N) per axis; rejects complex or negative coefficients.
  static TimeSampleDistribution from_lineshapes(std::span<const Lineshape> shapes);
  // l(k) = e^{-eta k} on every axis, truncated once the tail mass drops below `tail`.
  static TimeSampleDistribution lorentzian(double eta, int order, double tail = 1e-8);

  int order() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights(int axis) const { return weights_.at(static_cast<std::size_t>(axis)); }
  const std::vector<double>& cdf(int axis) const { return cdf_.at(static_cast<std::size_t>(axis)); }
  double p_tot() const { return p_tot_; }
  std::size_t k_max() const { return k_max_; }
  // E[sum_i k_i] under P(k) = prod l(k_i) / P_tot.
  double mean_length() const;

 private:
  explicit TimeSampleDistribution(std::vector<std::vector<double>> weights);
  std::vector<std::vector<double>> weights_;
  std::vector<std::vector<double>> cdf_;
  double p_tot_ = 1.0;
  std::size_t k_max_ = 0;
};

std::vector<int> sample_times(const TimeSampleDistribution& dist, Rng& rng);
std::vector<int> sample_times(const TimeSampleDistribution& dist, std::uint64_t seed);

// Omega^{-1} C_{n0}(k) by applying the scaled factors to |n0>.
Complex scaled_correlation(const QuantumSystem& system, std::size_t n0, const Correlator& correlator,
                           std::span<const int> k);

enum class Part { kReal, kImaginary };

// +1 with probability (1 + Re c)/2 (or Im c), c = Omega^{-1} C(k); mixed
// states draw n0 from rho first.
int hadamard_test(const QuantumSystem& system, const EquilibriumState& state,
                  const Correlator& correlator, std::span<const int> k, Part part, Rng& rng);
int hadamard_test(const QuantumSystem& system, const EquilibriumState& state,
                  const OperatorChain& chain, std::span<const int> k, Part part, std::uint64_t seed);

// Union-bound constant 2 ln(G / delta) for a max-grid guarantee at confidence 1 - delta.
double max_norm_constant(std::size_t grid_points, double delta = 0.05);

struct SingleAncillaOptions {
  // M = ceil(c (Omega P_tot)^2 / eps^2); unset means max_norm_constant(N^D).
  std::optional<double> c;
  // Overrides M when set.
  std::optional<std::uint64_t> rounds;
  bool keep_samples = false;
};

// R_eps(w) = (Omega P_tot / M) sum_m (x_m + i y_m) e^{-i w.k_m} on the N-point grid.
EstimatorReport single_ancilla_estimate(const QuantumSystem& system, const EquilibriumState& state,
                                        const Correlator& correlator,
                                        const TimeSampleDistribution& dist, std::size_t n,
                                        double eps, std::uint64_t seed,
                                        const SingleAncillaOptions& options = {});
EstimatorReport single_ancilla_estimate(const QuantumSystem& system, const EquilibriumState& state,
                                        const OperatorChain& chain,
                                        std::span<const Lineshape> shapes, std::size_t n,
                                        double eps, std::uint64_t seed,
                                        const SingleAncillaOptions& options = {});

// Keeps Re (D even) or i Im (D odd) of each term and reports the pair sum
// 2 (Omega P_tot / M) sum_m P(x_m + i y_m) e^{-i w.k_m}. Needs kept samples.
EstimatorReport conjugate_pair_projection(const EstimatorReport& report, int order);

// eps -> eps / tau and eta -> eta tau for a Hamiltonian rescaled by tau.
inline double scaled_accuracy(double eps, double tau) { return eps / tau; }
inline double scaled_eta(double eta, double tau) { return eta * tau; }

}  // namespace gqpe::sampling

#endif  // GQPE_SAMPLING_HPP_
