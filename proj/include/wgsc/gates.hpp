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

#pragma once

#include <cmath>

#include "wgsc/core.hpp"

namespace wgsc {

template <typename Real = double>
Matrix2c<Real> identity_gate() {
  return Matrix2c<Real>::Identity();
}

template <typename Real = double>
Matrix2c<Real> pauli_x() {
  Matrix2c<Real> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Real = double>
Matrix2c<Real> pauli_y() {
  Matrix2c<Real> m;
  m << ComplexT<Real>(0, 0), ComplexT<Real>(0, -1), ComplexT<Real>(0, 1),
      ComplexT<Real>(0, 0);
  return m;
}

template <typename Real = double>
Matrix2c<Real> pauli_z() {
  Matrix2c<Real> m;
  m << 1, 0, 0, -1;
  return m;
}

template <typename Real = double>
Matrix2c<Real> hadamard() {
  Matrix2c<Real> m;
  const Real s = Real(1) / std::sqrt(Real(2));
  m << s, s, s, -s;
  return m;
}

// Pauli-Z rotation R_z(phi) = exp(-i phi Z / 2) = diag(e^{-i phi/2}, e^{i phi/2}).
template <typename Real>
Matrix2c<Real> rz(Real phi) {
  Matrix2c<Real> m = Matrix2c<Real>::Zero();
  m(0, 0) = std::polar(Real(1), -phi / 2);
  m(1, 1) = std::polar(Real(1), phi / 2);
  return m;
}

// Phase gate S(phi) = diag(1, e^{i phi}); S(pi) = Z.
template <typename Real>
Matrix2c<Real> phase_shift(Real phi) {
  Matrix2c<Real> m = Matrix2c<Real>::Zero();
  m(0, 0) = Real(1);
  m(1, 1) = std::polar(Real(1), phi);
  return m;
}

template <typename Real = double>
Matrix2c<Real> s_gate() {
  return phase_shift(Real(kPi) / 2);
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& gate, double tol = kUnitaryTol) {
  using Scalar = typename Derived::Scalar;
  using Plain = Eigen::Matrix<Scalar, Derived::RowsAtCompileTime, Derived::ColsAtCompileTime>;
  if (gate.rows() != gate.cols()) return false;
  const Plain product = gate.adjoint() * gate;
  const Plain eye = Plain::Identity(gate.rows(), gate.cols());
  return (product - eye).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace wgsc
