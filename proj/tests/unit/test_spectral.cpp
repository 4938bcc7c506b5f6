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

#include <doctest.h>

#include "gqpe/spectral.hpp"
#include "../test_util.hpp"

using namespace gqpe;
using namespace gqpe::spectral;
using testutil::Matrix;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

}  // namespace

TEST_CASE("scalar system") {
  Matrix h = Matrix::Zero(1, 1);
  const auto s = build_system(h);
  CHECK(s.dim() == 1);
  CHECK(s.eigenvalue(0) == 0.0);
  CHECK(std::abs(s.eigenvectors()(0, 0)) == doctest::Approx(1.0));
}

TEST_CASE("diagonal system with fixed scaling keeps eigenvalues and basis") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = -0.7;
  h(1, 1) = 0.3;
  const auto s = build_system(h, FixedScale{1.0});
  CHECK(s.eigenvalue(0) == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(s.eigenvalue(1) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK((s.eigenvectors().cwiseAbs() - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("random Hermitian system reconstructs and is unitary") {
  std::mt19937_64 g(11);
  for (int dim : {2, 3, 6, 8}) {
    const Matrix h = 3.0 * testutil::random_hermitian(g, dim);
    const auto s = build_system(h);
    const Matrix u = s.eigenvectors();
    CHECK((u.adjoint() * u - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((s.hamiltonian() - h).norm() / h.norm() < 1e-10);
    CHECK(s.eigenvalues().cwiseAbs().maxCoeff() == doctest::Approx(0.9 * testutil::kPi).epsilon(1e-12));
    for (int i = 1; i < dim; ++i) CHECK(s.eigenvalue(i - 1) <= s.eigenvalue(i));
    // Reconstruction in scaled units: U diag(lambda) U^dagger = tau H.
    const Matrix scaled = u * s.eigenvalues().cast<testutil::Complex>().asDiagonal() * u.adjoint();
    CHECK((scaled - s.scale_factor() * h).norm() / (s.scale_factor() * h.norm()) < 1e-10);
  }
}

TEST_CASE("build_system errors") {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK(code_of([&] { build_system(h); }) == ErrorCode::kNonHermitianInput);
  Matrix big = Matrix::Zero(2, 2);
  big(0, 0) = 4.0;
  CHECK(code_of([&] { build_system(big, FixedScale{1.0}); }) == ErrorCode::kSpectrumExceedsPi);
  CHECK(code_of([&] { build_system(big, FixedScale{0.5}); }) == ErrorCode::kInternal);
}

TEST_CASE("propagator composes for integer times") {
  std::mt19937_64 g(3);
  const auto s = build_system(testutil::random_hermitian(g, 5));
  for (int t1 = 0; t1 <= 64; t1 += 7)
    for (int t2 = 0; t2 <= 64; t2 += 9) {
      const ComplexVector a = s.phases(t1).cwiseProduct(s.phases(t2));
      CHECK((a - s.phases(t1 + t2)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("delta grid") {
  Matrix z = Matrix::Zero(1, 1);
  CHECK(delta_grid(build_system(z))(0, 0) == 0.0);

  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1.0;
  const auto d2 = delta_grid(build_system(h, FixedScale{1.0}));
  CHECK(std::abs(d2(0, 1)) == doctest::Approx(1.0));
  CHECK(d2(0, 1) == -d2(1, 0));

  std::mt19937_64 g(5);
  const auto s = build_system(testutil::random_hermitian(g, 5));
  const auto d = delta_grid(s);
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      CHECK(d(a, b) == s.eigenvalue(static_cast<std::size_t>(a)) - s.eigenvalue(static_cast<std::size_t>(b)));
      CHECK(d(a, b) == -d(b, a));
    }
}

TEST_CASE("equilibrium states") {
  const auto p = EquilibriumState::pure(3, 1);
  CHECK(p.is_pure());
  CHECK(p.pure_index() == 1);
  CHECK(p.weights() == std::vector<double>{0, 1, 0});
  const auto m = EquilibriumState::mixed({0.25, 0.75});
  CHECK_FALSE(m.is_pure());
  CHECK(m.support() == std::vector<std::size_t>{0, 1});
  CHECK(code_of([] { EquilibriumState::mixed({0.5, 0.6}); }) == ErrorCode::kInvalidSpec);
  CHECK(code_of([] { EquilibriumState::mixed({1.2, -0.2}); }) == ErrorCode::kInvalidSpec);
  CHECK(code_of([] { EquilibriumState::pure(2, 2); }) == ErrorCode::kIndexOutOfRange);
  CHECK(EquilibriumState::mixed({0.0, 1.0}).is_pure());
}

TEST_CASE("to_eigenbasis identity and single Pauli") {
  std::mt19937_64 g(9);
  const auto s = build_system(testutil::random_hermitian(g, 4));
  const auto id = to_eigenbasis(Matrix::Identity(4, 4), s);
  CHECK((id.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(id.one_norm() == doctest::Approx(1.0));

  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = -0.5;
  h(1, 1) = 0.5;
  const auto s2 = build_system(h, FixedScale{1.0});
  const auto x = to_eigenbasis(testutil::pauli(1), s2, PauliNorm{});
  CHECK((x.matrix() - testutil::pauli(1)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(x.one_norm() == doctest::Approx(1.0));
}

TEST_CASE("Pauli one-norm matches an explicit trace expansion") {
  std::mt19937_64 g(21);
  const auto s = build_system(testutil::random_hermitian(g, 4));
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix op = testutil::random_hermitian(g, 4);
    double expected = 0.0;
    for (int p = 0; p < 16; ++p) expected += std::abs((testutil::pauli_string(p, 2) * op).trace()) / 4.0;
    CHECK(pauli_one_norm(op) == doctest::Approx(expected).epsilon(1e-12));
    const auto v = to_eigenbasis(op, s, PauliNorm{});
    CHECK(v.one_norm() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(v.one_norm() >= spectral_norm(op) * (1 - 1e-12));
  }
  // Three qubits, non-Hermitian.
  const Matrix op = testutil::random_complex(g, 8);
  double expected = 0.0;
  for (int p = 0; p < 64; ++p) expected += std::abs((testutil::pauli_string(p, 3) * op).trace()) / 8.0;
  CHECK(pauli_one_norm(op) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("to_eigenbasis round trip, norms and errors") {
  std::mt19937_64 g(4);
  const auto s = build_system(testutil::random_hermitian(g, 3));
  const Matrix op = testutil::random_complex(g, 3);
  const auto v = to_eigenbasis(op, s, SpectralNorm{}, "V");
  CHECK(v.label() == "V");
  CHECK((from_eigenbasis(v, s) - op).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((v.matrix() - s.eigenvectors().adjoint() * op * s.eigenvectors()).cwiseAbs().maxCoeff() < 1e-12);
  Eigen::JacobiSVD<Matrix> svd(op);
  CHECK(v.one_norm() == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
  CHECK(to_eigenbasis(op, s, GivenNorm{10.0}).one_norm() == 10.0);

  CHECK(code_of([&] { to_eigenbasis(Matrix::Identity(2, 2), s); }) == ErrorCode::kDimensionMismatch);
  CHECK(code_of([&] { to_eigenbasis(op, s, PauliNorm{}); }) == ErrorCode::kPauliPolicyOnNonPowerOfTwo);
  CHECK(code_of([&] { to_eigenbasis(op, s, GivenNorm{0.1}); }) == ErrorCode::kGivenNormTooSmall);
}

TEST_CASE("Hermiticity is preserved in the eigenbasis") {
  std::mt19937_64 g(8);
  const auto s = build_system(testutil::random_hermitian(g, 4));
  CHECK(to_eigenbasis(testutil::random_hermitian(g, 4), s).is_hermitian());
  CHECK_FALSE(to_eigenbasis(testutil::random_complex(g, 4), s).is_hermitian());
}

TEST_CASE("operator chain omega product") {
  std::mt19937_64 g(6);
  const auto s = build_system(testutil::random_hermitian(g, 3));
  std::vector<PerturbationOperator> ops;
  double prod = 1.0;
  for (int i = 0; i < 4; ++i) {
    ops.push_back(to_eigenbasis(testutil::random_complex(g, 3), s, GivenNorm{3.0 + i}));
    prod *= 3.0 + i;
  }
  const OperatorChain chain(ops);
  CHECK(chain.order() == 3);
  CHECK(chain.omega_product() == doctest::Approx(prod).epsilon(1e-12));
}
