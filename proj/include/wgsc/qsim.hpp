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

// Dense state-vector and density-matrix engine for small registers.
// Qubits are numbered 1..N; qubit 1 maps to the least-significant bit of the
// amplitude index. All operations are value-semantic: they take the input
// state by const reference and return a new state.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "wgsc/core.hpp"
#include "wgsc/gates.hpp"

namespace wgsc {

// ---------------------------------------------------------------------------
// State carriers
// ---------------------------------------------------------------------------

template <typename Real = double>
struct PureState {
  using RealType = Real;

  int num_qubits = 0;
  VectorXc<Real> amplitudes;

  PureState() = default;
  PureState(int n, VectorXc<Real> amps) : num_qubits(n), amplitudes(std::move(amps)) {
    validate();
  }

  Eigen::Index dim() const { return amplitudes.size(); }

  Real squared_norm() const { return amplitudes.squaredNorm(); }

  void validate() const {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("PureState: num_qubits must be in [1, " +
                                  std::to_string(kMaxQubits) + "]");
    }
    if (amplitudes.size() != (Eigen::Index{1} << num_qubits)) {
      throw std::invalid_argument("PureState: amplitude vector length is not 2^num_qubits");
    }
    if (std::abs(squared_norm() - Real(1)) > Real(kNormTol)) {
      throw std::invalid_argument("PureState: amplitudes are not normalized");
    }
  }

  // |index> in the computational basis.
  static PureState computational_basis(int n, std::uint64_t index) {
    VectorXc<Real> amps = VectorXc<Real>::Zero(Eigen::Index{1} << n);
    amps(static_cast<Eigen::Index>(index)) = ComplexT<Real>(1, 0);
    return PureState(n, std::move(amps));
  }

  // |+>^{\otimes n}
  static PureState plus_state(int n) {
    const Eigen::Index d = Eigen::Index{1} << n;
    VectorXc<Real> amps =
        VectorXc<Real>::Constant(d, ComplexT<Real>(Real(1) / std::sqrt(Real(d)), 0));
    return PureState(n, std::move(amps));
  }
};

template <typename Real = double>
struct DensityMatrix {
  using RealType = Real;

  int num_qubits = 0;
  MatrixXc<Real> elements;

  DensityMatrix() = default;
  DensityMatrix(int n, MatrixXc<Real> elems) : num_qubits(n), elements(std::move(elems)) {
    validate();
  }

  Eigen::Index dim() const { return elements.rows(); }

  Real trace() const { return elements.trace().real(); }

  // Hermitian within 1e-12, unit trace within 1e-12, eigenvalues >= -1e-10.
  void validate() const {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
      throw std::invalid_argument("DensityMatrix: num_qubits must be in [1, " +
                                  std::to_string(kMaxQubits) + "]");
    }
    const Eigen::Index d = Eigen::Index{1} << num_qubits;
    if (elements.rows() != d || elements.cols() != d) {
      throw std::invalid_argument("DensityMatrix: shape is not 2^N x 2^N");
    }
    if ((elements - elements.adjoint()).cwiseAbs().maxCoeff() > Real(kNormTol)) {
      throw std::invalid_argument("DensityMatrix: not Hermitian within tolerance");
    }
    if (std::abs(elements.trace().real() - Real(1)) > Real(kNormTol) ||
        std::abs(elements.trace().imag()) > Real(kNormTol)) {
      throw std::invalid_argument("DensityMatrix: trace is not 1 within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXc<Real>> solver(elements, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -Real(kPsdTol)) {
      throw std::invalid_argument("DensityMatrix: not positive semidefinite within tolerance");
    }
  }
};

template <typename Real>
DensityMatrix<Real> to_density(const PureState<Real>& psi) {
  DensityMatrix<Real> rho;
  rho.num_qubits = psi.num_qubits;
  rho.elements = psi.amplitudes * psi.amplitudes.adjoint();
  return rho;
}

template <typename Real>
ComplexT<Real> inner_product(const PureState<Real>& a, const PureState<Real>& b) {
  if (a.num_qubits != b.num_qubits) {
    throw std::invalid_argument("inner_product: qubit count mismatch");
  }
  return a.amplitudes.dot(b.amplitudes);
}

// ---------------------------------------------------------------------------
// Noise and measurement-basis descriptions
// ---------------------------------------------------------------------------

enum class NoiseKind { depolarizing, dephasing };

template <typename Real = double>
struct NoiseSpec {
  NoiseKind kind = NoiseKind::depolarizing;
  Real probability = 0;

  NoiseSpec() = default;
  NoiseSpec(NoiseKind k, Real p) : kind(k), probability(p) {
    if (!(p >= Real(0) && p <= Real(1))) {
      throw std::invalid_argument("NoiseSpec: probability must be in [0, 1]");
    }
  }
};

// Rank-1 projective basis on one qubit:
//   |m+> = cos(theta/2)|0> + e^{i lambda} sin(theta/2)|1>
//   |m-> = sin(theta/2)|0> - e^{i lambda} cos(theta/2)|1>
// Outcome +1 projects onto |m+>, outcome -1 onto |m->.
// Parameters are canonicalized to theta in [0, pi], lambda in [0, 2 pi).
template <typename Real = double>
struct MeasurementBasis {
  Real theta = 0;
  Real lambda = 0;

  MeasurementBasis() = default;
  MeasurementBasis(Real theta_in, Real lambda_in) {
    Real t = std::fmod(theta_in, Real(2 * kPi));
    if (t < Real(0)) t += Real(2 * kPi);
    Real l = lambda_in;
    if (t > Real(kPi)) {
      t = Real(2 * kPi) - t;
      l += Real(kPi);
    }
    l = std::fmod(l, Real(2 * kPi));
    if (l < Real(0)) l += Real(2 * kPi);
    theta = t;
    lambda = l;
  }

  Vector2c<Real> ket_plus() const {
    Vector2c<Real> v;
    v << ComplexT<Real>(std::cos(theta / 2), 0),
        std::polar(Real(1), lambda) * std::sin(theta / 2);
    return v;
  }

  Vector2c<Real> ket_minus() const {
    Vector2c<Real> v;
    v << ComplexT<Real>(std::sin(theta / 2), 0),
        -std::polar(Real(1), lambda) * std::cos(theta / 2);
    return v;
  }

  Vector2c<Real> ket(int outcome) const {
    return outcome >= 0 ? ket_plus() : ket_minus();
  }

  // The protocol's measurement for edge weight phi: the eigenbasis of
  // R_z(phi) X R_z(phi)^dagger, with kets (|0> +- e^{i phi}|1>)/sqrt(2).
  static MeasurementBasis equatorial(Real phi) {
    return MeasurementBasis(Real(kPi) / 2, phi);
  }

  static MeasurementBasis x_basis() { return equatorial(Real(0)); }
  static MeasurementBasis z_basis() { return MeasurementBasis(Real(0), Real(0)); }

  // True when the two bases define the same pair of projectors (up to phases),
  // used when comparing optimizer output against an analytic basis.
  bool same_projectors(const MeasurementBasis& other, Real tol) const {
    const auto p1 = ket_plus() * ket_plus().adjoint();
    const auto q1 = other.ket_plus() * other.ket_plus().adjoint();
    const Real direct = (p1 - q1).cwiseAbs().maxCoeff();
    const auto q2 = other.ket_minus() * other.ket_minus().adjoint();
    const Real swapped = (p1 - q2).cwiseAbs().maxCoeff();
    return std::min(direct, swapped) <= tol;
  }
};

// ---------------------------------------------------------------------------
// Index plumbing
// ---------------------------------------------------------------------------

namespace detail {

inline void check_qubit(int qubit, int num_qubits) {
  if (qubit < 1 || qubit > num_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) +
                            " out of range [1, " + std::to_string(num_qubits) + "]");
  }
}

// Removes the bit at position `pos` from index i.
inline Eigen::Index drop_bit(Eigen::Index i, int pos) {
  const Eigen::Index low = i & ((Eigen::Index{1} << pos) - 1);
  return ((i >> (pos + 1)) << pos) | low;
}

// Inserts `bit` at position `pos` into index j.
inline Eigen::Index insert_bit(Eigen::Index j, int pos, int bit) {
  const Eigen::Index low = j & ((Eigen::Index{1} << pos) - 1);
  return ((j >> pos) << (pos + 1)) | (Eigen::Index{bit} << pos) | low;
}

// <ket|_q psi: contracts qubit q against the given single-qubit ket and
// removes it. The result is unnormalized; its squared norm is the branch
// probability when `ket` is a measurement-basis vector.
template <typename Real>
VectorXc<Real> contract_qubit(const PureState<Real>& psi, int qubit,
                              const Vector2c<Real>& ket) {
  const int pos = qubit - 1;
  const Eigen::Index dim_out = psi.dim() / 2;
  VectorXc<Real> out = VectorXc<Real>::Zero(dim_out);
  const ComplexT<Real> c0 = std::conj(ket(0));
  const ComplexT<Real> c1 = std::conj(ket(1));
  for (Eigen::Index j = 0; j < dim_out; ++j) {
    const Eigen::Index i0 = insert_bit(j, pos, 0);
    const Eigen::Index i1 = insert_bit(j, pos, 1);
    out(j) = c0 * psi.amplitudes(i0) + c1 * psi.amplitudes(i1);
  }
  return out;
}

// <ket|_q rho |ket>_q: both-sided contraction, result on N-1 qubits,
// unnormalized (its trace is the branch probability).
template <typename Real>
MatrixXc<Real> contract_qubit(const DensityMatrix<Real>& rho, int qubit,
                              const Vector2c<Real>& ket) {
  const int pos = qubit - 1;
  const Eigen::Index dim_out = rho.dim() / 2;
  MatrixXc<Real> out = MatrixXc<Real>::Zero(dim_out, dim_out);
  const ComplexT<Real> c[2] = {std::conj(ket(0)), std::conj(ket(1))};
  for (Eigen::Index r = 0; r < dim_out; ++r) {
    for (Eigen::Index s = 0; s < dim_out; ++s) {
      ComplexT<Real> acc(0, 0);
      for (int br = 0; br < 2; ++br) {
        const Eigen::Index ir = insert_bit(r, pos, br);
        for (int bs = 0; bs < 2; ++bs) {
          const Eigen::Index is = insert_bit(s, pos, bs);
          acc += c[br] * rho.elements(ir, is) * std::conj(c[bs]);
        }
      }
      out(r, s) = acc;
    }
  }
  return out;
}

// Reduced 2x2 density matrix of a single qubit.
template <typename Real>
Matrix2c<Real> reduced_qubit(const PureState<Real>& psi, int qubit) {
  const int pos = qubit - 1;
  Matrix2c<Real> rho = Matrix2c<Real>::Zero();
  const Eigen::Index dim_rest = psi.dim() / 2;
  for (Eigen::Index j = 0; j < dim_rest; ++j) {
    const ComplexT<Real> a0 = psi.amplitudes(insert_bit(j, pos, 0));
    const ComplexT<Real> a1 = psi.amplitudes(insert_bit(j, pos, 1));
    rho(0, 0) += a0 * std::conj(a0);
    rho(0, 1) += a0 * std::conj(a1);
    rho(1, 0) += a1 * std::conj(a0);
    rho(1, 1) += a1 * std::conj(a1);
  }
  return rho;
}

template <typename Real>
Matrix2c<Real> reduced_qubit(const DensityMatrix<Real>& rho, int qubit) {
  const int pos = qubit - 1;
  Matrix2c<Real> out = Matrix2c<Real>::Zero();
  const Eigen::Index dim_rest = rho.dim() / 2;
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      ComplexT<Real> acc(0, 0);
      for (Eigen::Index j = 0; j < dim_rest; ++j) {
        acc += rho.elements(insert_bit(j, pos, b), insert_bit(j, pos, bp));
      }
      out(b, bp) = acc;
    }
  }
  return out;
}

template <typename Real, typename Derived>
void check_single_qubit_gate(const Eigen::MatrixBase<Derived>& gate) {
  if (gate.rows() != 2 || gate.cols() != 2) {
    throw std::invalid_argument("single-qubit gate must be 2x2");
  }
  if (!is_unitary(gate, Real(kUnitaryTol))) {
    throw std::invalid_argument("gate is not unitary within tolerance");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

template <typename Real, typename Derived>
PureState<Real> apply_single_qubit_gate(const PureState<Real>& psi, int qubit,
                                        const Eigen::MatrixBase<Derived>& gate) {
  detail::check_qubit(qubit, psi.num_qubits);
  detail::check_single_qubit_gate<Real>(gate);
  const int pos = qubit - 1;
  const ComplexT<Real> u00 = gate(0, 0), u01 = gate(0, 1);
  const ComplexT<Real> u10 = gate(1, 0), u11 = gate(1, 1);
  PureState<Real> out = psi;
  const Eigen::Index step = Eigen::Index{1} << pos;
  for (Eigen::Index base = 0; base < psi.dim(); base += 2 * step) {
    for (Eigen::Index off = 0; off < step; ++off) {
      const Eigen::Index i0 = base + off;
      const Eigen::Index i1 = i0 + step;
      const ComplexT<Real> a = out.amplitudes(i0);
      const ComplexT<Real> b = out.amplitudes(i1);
      out.amplitudes(i0) = u00 * a + u01 * b;
      out.amplitudes(i1) = u10 * a + u11 * b;
    }
  }
  return out;
}

template <typename Real, typename Derived>
DensityMatrix<Real> apply_single_qubit_gate(const DensityMatrix<Real>& rho, int qubit,
                                            const Eigen::MatrixBase<Derived>& gate) {
  detail::check_qubit(qubit, rho.num_qubits);
  detail::check_single_qubit_gate<Real>(gate);
  const int pos = qubit - 1;
  const Matrix2c<Real> u = gate.template cast<ComplexT<Real>>();
  DensityMatrix<Real> out = rho;
  const Eigen::Index dim = rho.dim();
  const Eigen::Index step = Eigen::Index{1} << pos;
  // rho -> U rho U^dagger, done as row pairs then column pairs.
  for (Eigen::Index col = 0; col < dim; ++col) {
    for (Eigen::Index base = 0; base < dim; base += 2 * step) {
      for (Eigen::Index off = 0; off < step; ++off) {
        const Eigen::Index i0 = base + off;
        const Eigen::Index i1 = i0 + step;
        const ComplexT<Real> a = out.elements(i0, col);
        const ComplexT<Real> b = out.elements(i1, col);
        out.elements(i0, col) = u(0, 0) * a + u(0, 1) * b;
        out.elements(i1, col) = u(1, 0) * a + u(1, 1) * b;
      }
    }
  }
  for (Eigen::Index row = 0; row < dim; ++row) {
    for (Eigen::Index base = 0; base < dim; base += 2 * step) {
      for (Eigen::Index off = 0; off < step; ++off) {
        const Eigen::Index i0 = base + off;
        const Eigen::Index i1 = i0 + step;
        const ComplexT<Real> a = out.elements(row, i0);
        const ComplexT<Real> b = out.elements(row, i1);
        out.elements(row, i0) = a * std::conj(u(0, 0)) + b * std::conj(u(0, 1));
        out.elements(row, i1) = a * std::conj(u(1, 0)) + b * std::conj(u(1, 1));
      }
    }
  }
  return out;
}

// CP(phi): multiplies the amplitude of every basis ket with control = target = 1
// by e^{i phi}. Symmetric in (control, target).
template <typename Real>
PureState<Real> apply_controlled_phase(const PureState<Real>& psi, int control,
                                       int target, Real phi) {
  detail::check_qubit(control, psi.num_qubits);
  detail::check_qubit(target, psi.num_qubits);
  if (control == target) {
    throw std::invalid_argument("controlled phase: control and target must differ");
  }
  const Eigen::Index mask =
      (Eigen::Index{1} << (control - 1)) | (Eigen::Index{1} << (target - 1));
  const ComplexT<Real> w = std::polar(Real(1), phi);
  PureState<Real> out = psi;
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    if ((i & mask) == mask) out.amplitudes(i) *= w;
  }
  return out;
}

template <typename Real>
DensityMatrix<Real> apply_controlled_phase(const DensityMatrix<Real>& rho, int control,
                                           int target, Real phi) {
  detail::check_qubit(control, rho.num_qubits);
  detail::check_qubit(target, rho.num_qubits);
  if (control == target) {
    throw std::invalid_argument("controlled phase: control and target must differ");
  }
  const Eigen::Index mask =
      (Eigen::Index{1} << (control - 1)) | (Eigen::Index{1} << (target - 1));
  const ComplexT<Real> w = std::polar(Real(1), phi);
  const ComplexT<Real> wc = std::conj(w);
  DensityMatrix<Real> out = rho;
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    const bool row_hit = (r & mask) == mask;
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      const bool col_hit = (c & mask) == mask;
      if (row_hit) out.elements(r, c) *= w;
      if (col_hit) out.elements(r, c) *= wc;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Noise channels
// ---------------------------------------------------------------------------

// Depolarizing: (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z).
// Dephasing:    (1-p) rho + p Z rho Z.
template <typename Real>
DensityMatrix<Real> apply_channel(const DensityMatrix<Real>& rho, int qubit,
                                  const NoiseSpec<Real>& noise) {
  detail::check_qubit(qubit, rho.num_qubits);
  const Real p = noise.probability;
  DensityMatrix<Real> out;
  out.num_qubits = rho.num_qubits;
  if (noise.kind == NoiseKind::depolarizing) {
    out.elements =
        (Real(1) - p) * rho.elements +
        (p / 3) * (apply_single_qubit_gate(rho, qubit, pauli_x<Real>()).elements +
                   apply_single_qubit_gate(rho, qubit, pauli_y<Real>()).elements +
                   apply_single_qubit_gate(rho, qubit, pauli_z<Real>()).elements);
  } else {
    out.elements = (Real(1) - p) * rho.elements +
                   p * apply_single_qubit_gate(rho, qubit, pauli_z<Real>()).elements;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Measurement and discarding
// ---------------------------------------------------------------------------

template <typename StateT>
struct MeasurementBranch {
  int outcome = 0;  // +1 or -1
  typename StateT::RealType probability = 0;
  // Empty when the branch probability is below 1e-14 (degenerate branch).
  std::optional<StateT> post_state;
};

namespace detail {

template <typename Real>
PureState<Real> embed_qubit(const VectorXc<Real>& rest, int qubit,
                            const Vector2c<Real>& ket) {
  const int pos = qubit - 1;
  PureState<Real> out;
  out.amplitudes = VectorXc<Real>::Zero(rest.size() * 2);
  for (Eigen::Index j = 0; j < rest.size(); ++j) {
    out.amplitudes(insert_bit(j, pos, 0)) = ket(0) * rest(j);
    out.amplitudes(insert_bit(j, pos, 1)) = ket(1) * rest(j);
  }
  return out;
}

template <typename Real>
DensityMatrix<Real> embed_qubit(const MatrixXc<Real>& rest, int qubit,
                                const Vector2c<Real>& ket) {
  const int pos = qubit - 1;
  DensityMatrix<Real> out;
  out.elements = MatrixXc<Real>::Zero(rest.rows() * 2, rest.cols() * 2);
  for (Eigen::Index r = 0; r < rest.rows(); ++r) {
    for (Eigen::Index s = 0; s < rest.cols(); ++s) {
      for (int br = 0; br < 2; ++br) {
        for (int bs = 0; bs < 2; ++bs) {
          out.elements(insert_bit(r, pos, br), insert_bit(s, pos, bs)) =
              ket(br) * rest(r, s) * std::conj(ket(bs));
        }
      }
    }
  }
  return out;
}

}  // namespace detail

// Projective measurement of one qubit. Returns both branches (+1 first); each
// post-state is normalized and keeps the measured qubit, collapsed onto the
// corresponding basis vector. Branch probabilities sum to 1.
template <typename Real>
std::array<MeasurementBranch<PureState<Real>>, 2> measure_qubit(
    const PureState<Real>& psi, int qubit, const MeasurementBasis<Real>& basis) {
  detail::check_qubit(qubit, psi.num_qubits);
  std::array<MeasurementBranch<PureState<Real>>, 2> branches;
  const int outcomes[2] = {+1, -1};
  for (int k = 0; k < 2; ++k) {
    const Vector2c<Real> ket = basis.ket(outcomes[k]);
    VectorXc<Real> rest = detail::contract_qubit(psi, qubit, ket);
    const Real p = rest.squaredNorm();
    branches[k].outcome = outcomes[k];
    branches[k].probability = p;
    if (p >= Real(kNullBranchTol)) {
      rest /= std::sqrt(p);
      PureState<Real> post = detail::embed_qubit(rest, qubit, ket);
      post.num_qubits = psi.num_qubits;
      branches[k].post_state = std::move(post);
    }
  }
  return branches;
}

template <typename Real>
std::array<MeasurementBranch<DensityMatrix<Real>>, 2> measure_qubit(
    const DensityMatrix<Real>& rho, int qubit, const MeasurementBasis<Real>& basis) {
  detail::check_qubit(qubit, rho.num_qubits);
  std::array<MeasurementBranch<DensityMatrix<Real>>, 2> branches;
  const int outcomes[2] = {+1, -1};
  for (int k = 0; k < 2; ++k) {
    const Vector2c<Real> ket = basis.ket(outcomes[k]);
    MatrixXc<Real> rest = detail::contract_qubit(rho, qubit, ket);
    const Real p = rest.trace().real();
    branches[k].outcome = outcomes[k];
    branches[k].probability = p;
    if (p >= Real(kNullBranchTol)) {
      rest /= p;
      DensityMatrix<Real> post = detail::embed_qubit(rest, qubit, ket);
      post.num_qubits = rho.num_qubits;
      branches[k].post_state = std::move(post);
    }
  }
  return branches;
}

// Measurement with the measured qubit removed from the post-states (higher
// qubit indices shift down by one). Equivalent to measure_qubit followed by
// discard_qubit, with the post-state phase fixed by the basis ket: the
// unnormalized branch state is exactly <m_o|_q psi (the Kraus action), so
// sqrt(probability) * post_state reconstructs it.
template <typename Real>
std::array<MeasurementBranch<PureState<Real>>, 2> measure_and_remove(
    const PureState<Real>& psi, int qubit, const MeasurementBasis<Real>& basis) {
  detail::check_qubit(qubit, psi.num_qubits);
  if (psi.num_qubits < 2) {
    throw std::invalid_argument("measure_and_remove: need at least 2 qubits");
  }
  std::array<MeasurementBranch<PureState<Real>>, 2> branches;
  const int outcomes[2] = {+1, -1};
  for (int k = 0; k < 2; ++k) {
    VectorXc<Real> rest = detail::contract_qubit(psi, qubit, basis.ket(outcomes[k]));
    const Real p = rest.squaredNorm();
    branches[k].outcome = outcomes[k];
    branches[k].probability = p;
    if (p >= Real(kNullBranchTol)) {
      PureState<Real> post;
      post.num_qubits = psi.num_qubits - 1;
      post.amplitudes = rest / std::sqrt(p);
      branches[k].post_state = std::move(post);
    }
  }
  return branches;
}

template <typename Real>
std::array<MeasurementBranch<DensityMatrix<Real>>, 2> measure_and_remove(
    const DensityMatrix<Real>& rho, int qubit, const MeasurementBasis<Real>& basis) {
  detail::check_qubit(qubit, rho.num_qubits);
  if (rho.num_qubits < 2) {
    throw std::invalid_argument("measure_and_remove: need at least 2 qubits");
  }
  std::array<MeasurementBranch<DensityMatrix<Real>>, 2> branches;
  const int outcomes[2] = {+1, -1};
  for (int k = 0; k < 2; ++k) {
    MatrixXc<Real> rest = detail::contract_qubit(rho, qubit, basis.ket(outcomes[k]));
    const Real p = rest.trace().real();
    branches[k].outcome = outcomes[k];
    branches[k].probability = p;
    if (p >= Real(kNullBranchTol)) {
      DensityMatrix<Real> post;
      post.num_qubits = rho.num_qubits - 1;
      post.elements = rest / p;
      branches[k].post_state = std::move(post);
    }
  }
  return branches;
}

// Removes a qubit that is in a product state with the rest (e.g. after a
// projective measurement). The qubit's reduced state must be pure within
// 1e-10; otherwise the qubit is entangled with the remainder and discarding
// it is a misuse.
template <typename Real>
PureState<Real> discard_qubit(const PureState<Real>& psi, int qubit) {
  detail::check_qubit(qubit, psi.num_qubits);
  if (psi.num_qubits < 2) {
    throw std::invalid_argument("discard_qubit: need at least 2 qubits");
  }
  const Matrix2c<Real> red = detail::reduced_qubit(psi, qubit);
  const Real purity = (red * red).trace().real();
  if (purity < Real(1) - Real(kPurityTol)) {
    throw std::invalid_argument(
        "discard_qubit: qubit " + std::to_string(qubit) +
        " is entangled with the remainder (reduced purity " + std::to_string(purity) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2c<Real>> solver(red);
  const Vector2c<Real> chi = solver.eigenvectors().col(1);  // dominant eigenvector
  VectorXc<Real> rest = detail::contract_qubit(psi, qubit, chi);
  PureState<Real> out;
  out.num_qubits = psi.num_qubits - 1;
  out.amplitudes = rest / std::sqrt(rest.squaredNorm());
  return out;
}

template <typename Real>
DensityMatrix<Real> discard_qubit(const DensityMatrix<Real>& rho, int qubit) {
  detail::check_qubit(qubit, rho.num_qubits);
  if (rho.num_qubits < 2) {
    throw std::invalid_argument("discard_qubit: need at least 2 qubits");
  }
  const Matrix2c<Real> red = detail::reduced_qubit(rho, qubit);
  const Real purity = (red * red).trace().real();
  if (purity < Real(1) - Real(kPurityTol)) {
    throw std::invalid_argument(
        "discard_qubit: qubit " + std::to_string(qubit) +
        " is entangled/correlated with the remainder (reduced purity " +
        std::to_string(purity) + ")");
  }
  Eigen::SelfAdjointEigenSolver<Matrix2c<Real>> solver(red);
  const Vector2c<Real> chi = solver.eigenvectors().col(1);
  MatrixXc<Real> rest = detail::contract_qubit(rho, qubit, chi);
  DensityMatrix<Real> out;
  out.num_qubits = rho.num_qubits - 1;
  out.elements = rest / rest.trace().real();
  return out;
}

}  // namespace wgsc
