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

#ifndef GQPE_SPECTRAL_HPP_
#define GQPE_SPECTRAL_HPP_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "gqpe/common.hpp"

namespace gqpe::spectral {

struct AutoScale {};
struct FixedScale {
  double tau = 1.0;
};
using Scaling = std::variant<AutoScale, FixedScale>;

// Auto scaling maps max|lambda| to this fraction of pi.
inline constexpr double kAutoScaleFraction = 0.9;

// Eigendecomposed Hamiltonian, eigenvalues scaled into [-pi, pi] and sorted.
class QuantumSystem {
 public:
  QuantumSystem(RealVector eigenvalues, ComplexMatrix eigenvectors,
                double scale_factor);

  std::size_t dim() const { return static_cast<std::size_t>(eigenvalues_.size()); }
  const RealVector& eigenvalues() const { return eigenvalues_; }
  double eigenvalue(std::size_t n) const { return eigenvalues_(static_cast<Eigen::Index>(n)); }
  const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
  double scale_factor() const { return tau_; }

  // U diag(lambda / tau) U^dagger, the Hamiltonian in original units.
  ComplexMatrix hamiltonian() const;
  // Diagonal of e^{i Lambda t}.
  ComplexVector phases(double t) const;

 private:
  RealVector eigenvalues_;
  ComplexMatrix eigenvectors_;
  double tau_;
};

QuantumSystem build_system(const ComplexMatrix& hamiltonian,
                           Scaling scaling = AutoScale{});

// Delta[a][b] = lambda_a - lambda_b: the phase rate of <a|V_I(t)|b>.
Eigen::MatrixXd delta_grid(const QuantumSystem& system);

// Equilibrium state stored as eigenbasis populations.
class EquilibriumState {
 public:
  static EquilibriumState pure(std::size_t dim, std::size_t index);
  static EquilibriumState mixed(std::vector<double> weights);

  bool is_pure() const { return pure_; }
  std::size_t dim() const { return weights_.size(); }
  // Throws InvalidSpec for mixed states.
  std::size_t pure_index() const;
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t n) const { return weights_.at(n); }
  // Indices with nonzero population.
  std::vector<std::size_t> support() const;

 private:
  EquilibriumState(std::vector<double> weights, bool pure)
      : weights_(std::move(weights)), pure_(pure) {}
  std::vector<double> weights_;
  bool pure_;
};

struct PauliNorm {};
struct SpectralNorm {};
struct GivenNorm {
  double value = 1.0;
};
using NormPolicy = std::variant<PauliNorm, SpectralNorm, GivenNorm>;

class PerturbationOperator {
 public:
  PerturbationOperator(std::string label, ComplexMatrix eigenbasis_matrix,
                       double one_norm);

  const std::string& label() const { return label_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(std::size_t a, std::size_t b) const {
    return matrix_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  double one_norm() const { return one_norm_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  bool is_hermitian(double tol = 1e-12) const;
  // Same operator with every matrix element conjugated.
  PerturbationOperator conjugated() const;
  PerturbationOperator adjoint() const;

 private:
  std::string label_;
  ComplexMatrix matrix_;
  double one_norm_;
};

PerturbationOperator to_eigenbasis(const ComplexMatrix& op,
                                   const QuantumSystem& system,
                                   NormPolicy policy = SpectralNorm{},
                                   std::string label = "");
// Conjugates back to the computational basis: U V U^dagger.
ComplexMatrix from_eigenbasis(const PerturbationOperator& op,
                              const QuantumSystem& system);

double spectral_norm(const ComplexMatrix& m);
// Sum of |c_P| over the Pauli expansion of m (computational basis).
double pauli_one_norm(const ComplexMatrix& m);

// [V^(0), ..., V^(D)].
class OperatorChain {
 public:
  explicit OperatorChain(std::vector<PerturbationOperator> ops);

  int order() const { return static_cast<int>(ops_.size()) - 1; }
  std::size_t size() const { return ops_.size(); }
  std::size_t dim() const { return ops_.front().dim(); }
  const PerturbationOperator& at(std::size_t j) const { return ops_.at(j); }
  const std::vector<PerturbationOperator>& ops() const { return ops_; }
  double omega_product() const { return omega_; }

 private:
  std::vector<PerturbationOperator> ops_;
  double omega_;
};

}  // namespace gqpe::spectral

#endif  // GQPE_SPECTRAL_HPP_
