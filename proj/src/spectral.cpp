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

#include "gqpe/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace gqpe {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonHermitianInput: return "NonHermitianInput";
    case ErrorCode::kSpectrumExceedsPi: return "SpectrumExceedsPi";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPauliPolicyOnNonPowerOfTwo: return "PauliPolicyOnNonPowerOfTwo";
    case ErrorCode::kGivenNormTooSmall: return "GivenNormTooSmall";
    case ErrorCode::kInvalidParameter: return "InvalidParameter";
    case ErrorCode::kUnsupportedN: return "UnsupportedN";
    case ErrorCode::kNoClosedForm: return "NoClosedForm";
    case ErrorCode::kSingularPoint: return "SingularPoint";
    case ErrorCode::kShapeCountMismatch: return "ShapeCountMismatch";
    case ErrorCode::kOrderTooLarge: return "OrderTooLarge";
    case ErrorCode::kNonCausalInput: return "NonCausalInput";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kWrongMode: return "WrongMode";
    case ErrorCode::kResourceLimit: return "ResourceLimit";
    case ErrorCode::kEnergyShiftOffGrid: return "EnergyShiftOffGrid";
    case ErrorCode::kNegativeTime: return "NegativeTime";
    case ErrorCode::kInvalidAccuracy: return "InvalidAccuracy";
    case ErrorCode::kNegativeLineshapeWeight: return "NegativeLineshapeWeight";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

double wrap_angle(double x) {
  double y = std::fmod(x + kPi, kTwoPi);
  if (y < 0) y += kTwoPi;
  return y - kPi;
}

double wrapped_omega(std::size_t k, std::size_t n) {
  // Integer wrap first so grid points map exactly.
  const auto kk = static_cast<long long>(k % n);
  const auto nn = static_cast<long long>(n);
  const long long shifted = (2 * kk >= nn) ? kk - nn : kk;
  return kTwoPi * static_cast<double>(shifted) / static_cast<double>(n);
}

}  // namespace gqpe

namespace gqpe::spectral {

namespace {

double hermitian_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

QuantumSystem::QuantumSystem(RealVector eigenvalues, ComplexMatrix eigenvectors,
                             double scale_factor)
    : eigenvalues_(std::move(eigenvalues)),
      eigenvectors_(std::move(eigenvectors)),
      tau_(scale_factor) {
  if (eigenvalues_.size() == 0) fail(ErrorCode::kInvalidSpec, "empty spectrum");
  if (eigenvectors_.rows() != eigenvalues_.size() ||
      eigenvectors_.cols() != eigenvalues_.size())
    fail(ErrorCode::kDimensionMismatch, "eigenvector matrix shape");
  if (!(tau_ > 0)) fail(ErrorCode::kInvalidParameter, "scale factor must be > 0");
  if (eigenvalues_.cwiseAbs().maxCoeff() > kPi)
    fail(ErrorCode::kSpectrumExceedsPi, "max |lambda| exceeds pi");
}

ComplexMatrix QuantumSystem::hamiltonian() const {
  const RealVector unscaled = eigenvalues_ / tau_;
  return eigenvectors_ * unscaled.cast<Complex>().asDiagonal() *
         eigenvectors_.adjoint();
}

ComplexVector QuantumSystem::phases(double t) const {
  ComplexVector p(eigenvalues_.size());
  for (Eigen::Index n = 0; n < eigenvalues_.size(); ++n)
    p(n) = std::polar(1.0, eigenvalues_(n) * t);
  return p;
}

QuantumSystem build_system(const ComplexMatrix& hamiltonian, Scaling scaling) {
  if (hamiltonian.rows() == 0 || hamiltonian.rows() != hamiltonian.cols())
    fail(ErrorCode::kDimensionMismatch, "Hamiltonian must be square with dim >= 1");
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if (hermitian_defect(hamiltonian) > 1e-10 * scale)
    fail(ErrorCode::kNonHermitianInput, "Hamiltonian is not Hermitian within 1e-10");

  const ComplexMatrix h = 0.5 * (hamiltonian + hamiltonian.adjoint());
  if (const auto* fixed = std::get_if<FixedScale>(&scaling)) {
    if (!(fixed->tau > 0)) fail(ErrorCode::kInvalidParameter, "tau must be > 0");
    // Diagonalize tau*H directly: with tau a power of two the eigenvalues are
    // bitwise tau times those of H.
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(fixed->tau * h);
    if (es.info() != Eigen::Success) fail(ErrorCode::kInternal, "eigensolver failed");
    if (es.eigenvalues().cwiseAbs().maxCoeff() > kPi)
      fail(ErrorCode::kSpectrumExceedsPi,
           "fixed scaling leaves max |lambda| = " +
               std::to_string(es.eigenvalues().cwiseAbs().maxCoeff()));
    return QuantumSystem(es.eigenvalues(), es.eigenvectors(), fixed->tau);
  }

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) fail(ErrorCode::kInternal, "eigensolver failed");
  const double peak = es.eigenvalues().cwiseAbs().maxCoeff();
  const double tau = peak > 0 ? kAutoScaleFraction * kPi / peak : 1.0;
  RealVector lambda = tau * es.eigenvalues();
  // Guard the bound against the last-ulp rounding of the product.
  for (Eigen::Index n = 0; n < lambda.size(); ++n)
    lambda(n) = std::clamp(lambda(n), -kPi, kPi);
  return QuantumSystem(lambda, es.eigenvectors(), tau);
}

Eigen::MatrixXd delta_grid(const QuantumSystem& system) {
  const auto& l = system.eigenvalues();
  const Eigen::Index d = l.size();
  Eigen::MatrixXd delta(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) delta(a, b) = l(a) - l(b);
  return delta;
}

EquilibriumState EquilibriumState::pure(std::size_t dim, std::size_t index) {
  if (dim == 0) fail(ErrorCode::kInvalidSpec, "state dimension must be >= 1");
  if (index >= dim) fail(ErrorCode::kIndexOutOfRange, "pure-state index out of range");
  std::vector<double> w(dim, 0.0);
  w[index] = 1.0;
  return EquilibriumState(std::move(w), true);
}

EquilibriumState EquilibriumState::mixed(std::vector<double> weights) {
  if (weights.empty()) fail(ErrorCode::kInvalidSpec, "empty weight vector");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0) || !std::isfinite(w))
      fail(ErrorCode::kInvalidSpec, "state weights must be finite and >= 0");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    fail(ErrorCode::kInvalidSpec, "state weights must sum to 1 within 1e-12");
  const auto ones = std::count(weights.begin(), weights.end(), 1.0);
  const auto zeros = std::count(weights.begin(), weights.end(), 0.0);
  const bool pure = ones == 1 && zeros + 1 == static_cast<long>(weights.size());
  return EquilibriumState(std::move(weights), pure);
}

std::size_t EquilibriumState::pure_index() const {
  if (!pure_) fail(ErrorCode::kInvalidSpec, "state is mixed");
  return static_cast<std::size_t>(
      std::find(weights_.begin(), weights_.end(), 1.0) - weights_.begin());
}

std::vector<std::size_t> EquilibriumState::support() const {
  std::vector<std::size_t> s;
  for (std::size_t n = 0; n < weights_.size(); ++n)
    if (weights_[n] > 0) s.push_back(n);
  return s;
}

PerturbationOperator::PerturbationOperator(std::string label,
                                           ComplexMatrix eigenbasis_matrix,
                                           double one_norm)
    : label_(std::move(label)), matrix_(std::move(eigenbasis_matrix)), one_norm_(one_norm) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols())
    fail(ErrorCode::kDimensionMismatch, "operator must be square");
  if (!(one_norm_ > 0) || !std::isfinite(one_norm_))
    fail(ErrorCode::kInvalidParameter, "one_norm must be finite and > 0");
  if (spectral_norm(matrix_) > one_norm_ * (1 + 1e-12))
    fail(ErrorCode::kGivenNormTooSmall, "one_norm below the spectral norm");
}

bool PerturbationOperator::is_hermitian(double tol) const {
  return hermitian_defect(matrix_) <= tol;
}

PerturbationOperator PerturbationOperator::conjugated() const {
  return PerturbationOperator(label_, matrix_.conjugate(), one_norm_);
}

PerturbationOperator PerturbationOperator::adjoint() const {
  return PerturbationOperator(label_, matrix_.adjoint(), one_norm_);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double pauli_one_norm(const ComplexMatrix& m) {
  const auto d = static_cast<std::size_t>(m.rows());
  if (!is_power_of_two(d))
    fail(ErrorCode::kPauliPolicyOnNonPowerOfTwo,
         "Pauli norm needs a power-of-two dimension, got " + std::to_string(d));
  // P = X^x Z^z (up to phase); tr(P^dagger M) = sum_c (-1)^{popcount(z & c)} M[c][c ^ x].
  double total = 0.0;
  for (std::size_t x = 0; x < d; ++x) {
    for (std::size_t z = 0; z < d; ++z) {
      Complex tr = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double sign = (std::popcount(z & c) & 1) ? -1.0 : 1.0;
        tr += sign * m(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c ^ x));
      }
      total += std::abs(tr) / static_cast<double>(d);
    }
  }
  return total;
}

PerturbationOperator to_eigenbasis(const ComplexMatrix& op, const QuantumSystem& system,
                                   NormPolicy policy, std::string label) {
  if (op.rows() != static_cast<Eigen::Index>(system.dim()) || op.cols() != op.rows())
    fail(ErrorCode::kDimensionMismatch,
         "operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
             ", system dim " + std::to_string(system.dim()));
  const ComplexMatrix& u = system.eigenvectors();
  ComplexMatrix v = u.adjoint() * op * u;
  const double snorm = spectral_norm(op);
  double norm = 0.0;
  if (std::holds_alternative<PauliNorm>(policy)) {
    norm = pauli_one_norm(op);
  } else if (std::holds_alternative<SpectralNorm>(policy)) {
    norm = snorm;
  } else {
    norm = std::get<GivenNorm>(policy).value;
    if (!(norm >= snorm * (1 - 1e-12)))
      fail(ErrorCode::kGivenNormTooSmall,
           "given norm " + std::to_string(norm) + " < spectral norm " + std::to_string(snorm));
    norm = std::max(norm, snorm);
  }
  // The Pauli sum can undershoot the SVD value by rounding.
  norm = std::max(norm, snorm);
  if (norm == 0.0) norm = 1.0;
  return PerturbationOperator(std::move(label), std::move(v), norm);
}

ComplexMatrix from_eigenbasis(const PerturbationOperator& op, const QuantumSystem& system) {
  const ComplexMatrix& u = system.eigenvectors();
  return u * op.matrix() * u.adjoint();
}

OperatorChain::OperatorChain(std::vector<PerturbationOperator> ops) : ops_(std::move(ops)) {
  if (ops_.empty()) fail(ErrorCode::kInvalidSpec, "operator chain needs D+1 >= 1 operators");
  omega_ = 1.0;
  for (const auto& op : ops_) {
    if (op.dim() != ops_.front().dim())
      fail(ErrorCode::kDimensionMismatch, "chain operators differ in dimension");
    omega_ *= op.one_norm();
  }
}

}  // namespace gqpe::spectral
