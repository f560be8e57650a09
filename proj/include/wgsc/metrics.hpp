// Copyright 2026 The wgsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Entanglement and fidelity measures: Wootters concurrence for two-qubit
// mixed states (two independent computation routes), state fidelity, the
// reference concurrence of a directly-entangled noisy pair, and the
// concurrence advantage.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wgsc/core.hpp"
#include "wgsc/qsim.hpp"
#include "wgsc/wgs.hpp"

namespace wgsc {

template <typename Real = double>
struct ConcurrenceReport {
  Real value = 0;
  // Nonnegative, nonincreasing; value = max(l1 - l2 - l3 - l4, 0).
  Eigen::Matrix<Real, 4, 1> lambdas = Eigen::Matrix<Real, 4, 1>::Zero();
};

namespace detail {

template <typename Real>
Matrix4c<Real> spin_flip_matrix() {
  // Y (x) Y in the computational basis; the same matrix for either qubit
  // ordering.
  Matrix4c<Real> yy = Matrix4c<Real>::Zero();
  yy(0, 3) = ComplexT<Real>(-1, 0);
  yy(1, 2) = ComplexT<Real>(1, 0);
  yy(2, 1) = ComplexT<Real>(1, 0);
  yy(3, 0) = ComplexT<Real>(-1, 0);
  return yy;
}

// rho~ = (Y (x) Y) rho* (Y (x) Y), with the conjugate taken in the
// computational basis.
template <typename Real>
Matrix4c<Real> spin_flipped(const Matrix4c<Real>& rho) {
  const Matrix4c<Real> yy = spin_flip_matrix<Real>();
  return yy * rho.conjugate() * yy;
}

template <typename Real>
Matrix4c<Real> psd_sqrt(const Matrix4c<Real>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c<Real>> solver(m);
  Eigen::Matrix<Real, 4, 1> w = solver.eigenvalues();
  for (int i = 0; i < 4; ++i) w(i) = std::sqrt(std::max(w(i), Real(0)));
  return solver.eigenvectors() * w.template cast<ComplexT<Real>>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

template <typename Real>
void check_two_qubit(const DensityMatrix<Real>& rho) {
  if (rho.num_qubits != 2 || rho.dim() != 4) {
    throw std::invalid_argument("concurrence: needs a 2-qubit density matrix");
  }
  rho.validate();
}

}  // namespace detail

// The lambdas as square roots of the eigenvalues of rho rho~ (real parts,
// clipped at zero), in nonincreasing order. This is the primary route: it
// avoids the matrix square root of a near-singular rho.
template <typename Real>
Eigen::Matrix<Real, 4, 1> concurrence_lambdas(const DensityMatrix<Real>& rho) {
  detail::check_two_qubit(rho);
  const Matrix4c<Real> r = rho.elements;
  const Matrix4c<Real> product = r * detail::spin_flipped<Real>(r);
  Eigen::ComplexEigenSolver<Matrix4c<Real>> solver(product, /*computeEigenvectors=*/false);
  Eigen::Matrix<Real, 4, 1> lambdas;
  for (int i = 0; i < 4; ++i) {
    lambdas(i) = std::sqrt(std::max(solver.eigenvalues()(i).real(), Real(0)));
  }
  std::sort(lambdas.data(), lambdas.data() + 4, std::greater<Real>());
  return lambdas;
}

// Cross-check route: the lambdas as singular values of sqrt(rho) sqrt(rho~).
template <typename Real>
Eigen::Matrix<Real, 4, 1> concurrence_lambdas_svd(const DensityMatrix<Real>& rho) {
  detail::check_two_qubit(rho);
  const Matrix4c<Real> r = rho.elements;
  const Matrix4c<Real> product =
      detail::psd_sqrt<Real>(r) * detail::psd_sqrt<Real>(detail::spin_flipped<Real>(r));
  Eigen::JacobiSVD<Matrix4c<Real>> svd(product);
  return svd.singularValues();
}

// Wootters concurrence C = max(l1 - l2 - l3 - l4, 0) of a two-qubit state.
template <typename Real>
ConcurrenceReport<Real> concurrence(const DensityMatrix<Real>& rho) {
  ConcurrenceReport<Real> report;
  report.lambdas = concurrence_lambdas(rho);
  report.value = std::max(
      report.lambdas(0) - report.lambdas(1) - report.lambdas(2) - report.lambdas(3),
      Real(0));
  return report;
}

template <typename Real>
ConcurrenceReport<Real> concurrence(const PureState<Real>& psi) {
  return concurrence(to_density(psi));
}

// <psi| rho |psi>
template <typename Real>
Real fidelity_with_pure(const DensityMatrix<Real>& rho, const PureState<Real>& psi) {
  if (rho.dim() != psi.dim()) {
    throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  }
  return (psi.amplitudes.adjoint() * rho.elements * psi.amplitudes)(0).real();
}

// |<psi|chi>|^2
template <typename Real>
Real fidelity(const PureState<Real>& a, const PureState<Real>& b) {
  return std::norm(inner_product(a, b));
}

// Concurrence obtained by directly entangling a noisy pair: per-qubit noise
// on |++>, then a single CP(phi). At p = 0 this equals |sin(phi/2)|.
template <typename Real>
Real reference_concurrence(Real phi, const NoiseSpec<Real>& noise) {
  WeightedGraph<Real> pair(2, {{1, 2, phi}});
  return concurrence(build_noisy_state(pair, noise)).value;
}

// Delta C = C - C_ref; may be negative.
template <typename Real>
Real concurrence_advantage(Real protocol_concurrence, Real reference) {
  auto in_unit = [](Real x) { return x >= Real(0) - Real(1e-12) && x <= Real(1) + Real(1e-12); };
  if (!in_unit(protocol_concurrence) || !in_unit(reference)) {
    throw std::invalid_argument("concurrence_advantage: inputs must be in [0, 1]");
  }
  return protocol_concurrence - reference;
}

}  // namespace wgsc
