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

// The entanglement-concentration protocol on 1D chains: even-site
// measurements with exact branch enumeration, the closed-form Kraus pair, the
// success-probability formula, the phase correction on the surviving qubits,
// and the deterministic phi = pi conversion.

#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "wgsc/core.hpp"
#include "wgsc/gates.hpp"
#include "wgsc/qsim.hpp"
#include "wgsc/wgs.hpp"

namespace wgsc {

// P_{s,n} = (1/2^n) |sin(phi/2)|^{2n}: the probability that all n even-site
// measurements of a uniform chain give outcome -1.
template <typename Real>
Real success_probability(int n, Real phi) {
  if (n < 0) throw std::invalid_argument("success_probability: n must be >= 0");
  return std::pow(std::abs(std::sin(phi / 2)), Real(2 * n)) / std::pow(Real(2), Real(n));
}

// ---------------------------------------------------------------------------
// Closed-form Kraus pair for one even-site measurement
// ---------------------------------------------------------------------------

// Kraus operators on the two neighbors of a measured middle qubit, written in
// the two-qubit basis |b1 b3> with b1 the low bit (matching the post-state
// amplitude layout after the middle qubit is removed):
//   K+ = cos(phi/2) (e^{-i phi/2}|00><00| + e^{i phi/2}|11><11|)
//        + |01><01| + |10><10|
//   K- = i sin(phi/2) (e^{-i phi/2}|00><00| - e^{i phi/2}|11><11|)
template <typename Real = double>
struct KrausPair {
  Matrix4c<Real> k_plus;
  Matrix4c<Real> k_minus;

  // Max deviation of K+^t K+ + K-^t K- from the identity.
  Real completeness_error() const {
    const Matrix4c<Real> sum = k_plus.adjoint() * k_plus + k_minus.adjoint() * k_minus;
    return (sum - Matrix4c<Real>::Identity()).cwiseAbs().maxCoeff();
  }
};

template <typename Real>
KrausPair<Real> kraus_pair(Real phi) {
  const Real c = std::cos(phi / 2);
  const Real s = std::sin(phi / 2);
  const ComplexT<Real> em = std::polar(Real(1), -phi / 2);
  const ComplexT<Real> ep = std::polar(Real(1), phi / 2);
  const ComplexT<Real> i(0, 1);
  KrausPair<Real> pair;
  pair.k_plus = Matrix4c<Real>::Zero();
  pair.k_plus(0, 0) = c * em;
  pair.k_plus(1, 1) = ComplexT<Real>(1, 0);
  pair.k_plus(2, 2) = ComplexT<Real>(1, 0);
  pair.k_plus(3, 3) = c * ep;
  pair.k_minus = Matrix4c<Real>::Zero();
  pair.k_minus(0, 0) = i * s * em;
  pair.k_minus(3, 3) = -i * s * ep;
  return pair;
}

// ---------------------------------------------------------------------------
// Branch enumeration
// ---------------------------------------------------------------------------

template <typename StateT>
struct ProtocolOutcome {
  // One entry per measured even site, in site order (site 2 first).
  std::vector<int> outcomes;
  typename StateT::RealType probability = 0;
  // State on the n+1 surviving qubits; empty for branches with probability
  // below 1e-14.
  std::optional<StateT> post_state;
  // Whether the step-2 phase correction has been applied.
  bool corrected = false;
};

template <typename T>
inline constexpr bool is_pure_state_v = false;
template <typename R>
inline constexpr bool is_pure_state_v<PureState<R>> = true;

// The protocol's measurement bases: M for weight phi on every even site.
template <typename Real>
std::vector<MeasurementBasis<Real>> protocol_bases(int n, Real phi) {
  return std::vector<MeasurementBasis<Real>>(n, MeasurementBasis<Real>::equatorial(phi));
}

// Measures the n even sites of a (2n+1)-qubit chain state in the given bases
// and enumerates all 2^n outcome branches exactly. Branches are returned in
// canonical order: branch index b has outcome -1 at even site 2(k+1) iff bit
// k of b is set, so the all-(-1) success branch is the last entry. Measured
// qubits are removed from the post-states.
template <typename StateT,
          typename Real = typename StateT::RealType>
std::vector<ProtocolOutcome<StateT>> run_concentration(
    const StateT& state, std::span<const MeasurementBasis<Real>> bases) {
  const int num_qubits = state.num_qubits;
  if (num_qubits % 2 == 0) {
    throw std::invalid_argument("run_concentration: state must have an odd qubit count");
  }
  const int n = (num_qubits - 1) / 2;
  if (static_cast<int>(bases.size()) != n) {
    throw std::invalid_argument("run_concentration: expected " + std::to_string(n) +
                                " measurement bases, got " + std::to_string(bases.size()));
  }

  std::vector<ProtocolOutcome<StateT>> branches;
  branches.reserve(std::size_t{1} << n);
  for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
    ProtocolOutcome<StateT> branch;
    branch.outcomes.resize(n);
    for (int k = 0; k < n; ++k) branch.outcomes[k] = (b >> k) & 1 ? -1 : +1;

    // Contract even sites in descending order so earlier removals do not
    // shift the indices still to be measured.
    StateT cur = state;
    bool dead = false;
    for (int k = n; k >= 1 && !dead; --k) {
      const auto ket = bases[k - 1].ket(branch.outcomes[k - 1]);
      if constexpr (is_pure_state_v<StateT>) {
        cur.amplitudes = detail::contract_qubit(cur, 2 * k, ket);
      } else {
        cur.elements = detail::contract_qubit(cur, 2 * k, ket);
      }
      cur.num_qubits -= 1;
      if constexpr (is_pure_state_v<StateT>) {
        dead = cur.amplitudes.squaredNorm() < Real(kNullBranchTol);
      } else {
        dead = cur.elements.trace().real() < Real(kNullBranchTol);
      }
    }
    if constexpr (is_pure_state_v<StateT>) {
      branch.probability = cur.amplitudes.squaredNorm();
      if (!dead) {
        cur.amplitudes /= std::sqrt(branch.probability);
        branch.post_state = std::move(cur);
      }
    } else {
      branch.probability = cur.elements.trace().real();
      if (!dead) {
        cur.elements /= branch.probability;
        branch.post_state = std::move(cur);
      }
    }
    branches.push_back(std::move(branch));
  }
  return branches;
}

template <typename StateT, typename Real>
std::vector<ProtocolOutcome<StateT>> run_concentration(
    const StateT& state, const std::vector<MeasurementBasis<Real>>& bases) {
  return run_concentration(state, std::span<const MeasurementBasis<Real>>(bases));
}

template <typename StateT>
const ProtocolOutcome<StateT>& success_branch(
    const std::vector<ProtocolOutcome<StateT>>& branches) {
  return branches.back();  // all outcomes -1 by canonical ordering
}

// ---------------------------------------------------------------------------
// Step-2 correction
// ---------------------------------------------------------------------------

// R_z[n (pi - phi)]: cancels the success branch's relative phase n (pi + phi)
// when applied to any one surviving qubit.
template <typename Real>
Matrix2c<Real> correction_rotation(int n, Real phi) {
  if (n < 0) throw std::invalid_argument("correction_rotation: n must be >= 0");
  return rz(Real(n) * (Real(kPi) - phi));
}

// Applies the correction to the last surviving qubit (the chain's qubit 2n+1)
// of a branch post-state.
template <typename StateT, typename Real = typename StateT::RealType>
ProtocolOutcome<StateT> with_correction(const ProtocolOutcome<StateT>& branch, Real phi) {
  if (!branch.post_state) {
    throw std::invalid_argument("with_correction: branch has no post-state");
  }
  const int n = static_cast<int>(branch.outcomes.size());
  ProtocolOutcome<StateT> out = branch;
  out.post_state =
      apply_single_qubit_gate(*branch.post_state, n + 1, correction_rotation(n, phi));
  out.corrected = true;
  return out;
}

// ---------------------------------------------------------------------------
// GHZ targets
// ---------------------------------------------------------------------------

// (|0...0> + |1...1>)/sqrt(2)
template <typename Real = double>
PureState<Real> ghz_state(int num_qubits) {
  VectorXc<Real> amps = VectorXc<Real>::Zero(Eigen::Index{1} << num_qubits);
  const Real s = Real(1) / std::sqrt(Real(2));
  amps(0) = ComplexT<Real>(s, 0);
  amps(amps.size() - 1) = ComplexT<Real>(s, 0);
  return PureState<Real>(num_qubits, std::move(amps));
}

// Single-qubit Z gates map the GHZ state onto (|0...0> +- |1...1>)/sqrt(2)
// only; the orbit fidelity is the larger of the two overlaps.
template <typename Real>
Real ghz_orbit_fidelity(const PureState<Real>& psi) {
  const Eigen::Index last = psi.dim() - 1;
  const ComplexT<Real> a = psi.amplitudes(0);
  const ComplexT<Real> b = psi.amplitudes(last);
  return (std::norm(a) + std::norm(b)) / 2 + std::abs((a * std::conj(b)).real());
}

template <typename Real>
Real ghz_orbit_fidelity(const DensityMatrix<Real>& rho) {
  const Eigen::Index last = rho.dim() - 1;
  const Real diag = (rho.elements(0, 0).real() + rho.elements(last, last).real()) / 2;
  return diag + std::abs(rho.elements(0, last).real());
}

// ---------------------------------------------------------------------------
// Deterministic phi = pi conversion
// ---------------------------------------------------------------------------

namespace detail {

// Products of {I, X, Z, H, S} up to length 2, deduplicated up to global
// phase. Ordered so that the corrections actually needed at phi = pi
// (X patterns plus at most one Z) are found early.
template <typename Real>
const std::vector<Matrix2c<Real>>& correction_gate_set() {
  static const std::vector<Matrix2c<Real>> gates = [] {
    const std::vector<Matrix2c<Real>> base = {identity_gate<Real>(), pauli_x<Real>(),
                                              pauli_z<Real>(), hadamard<Real>(),
                                              s_gate<Real>()};
    std::vector<Matrix2c<Real>> out;
    auto equivalent_up_to_phase = [](const Matrix2c<Real>& u, const Matrix2c<Real>& v) {
      const ComplexT<Real> t = (v.adjoint() * u).trace();
      if (std::abs(t) < Real(1e-9)) return false;
      const ComplexT<Real> phase = t / std::abs(t);
      return (u - phase * v).cwiseAbs().maxCoeff() < Real(1e-9);
    };
    auto push_unique = [&](const Matrix2c<Real>& u) {
      for (const auto& v : out) {
        if (equivalent_up_to_phase(u, v)) return;
      }
      out.push_back(u);
    };
    for (const auto& g : base) push_unique(g);
    for (const auto& g : base) {
      for (const auto& h : base) push_unique(g * h);
    }
    return out;
  }();
  return gates;
}

}  // namespace detail

// Converts the phi = pi chain (a 1D cluster state) with X measurements on the
// even sites: every one of the 2^n branches is corrected to the GHZ state by
// per-qubit gates found by bounded search, so the total conversion
// probability is 1.
template <typename Real = double>
std::vector<ProtocolOutcome<PureState<Real>>> deterministic_cluster_conversion(
    int n, Real phi = Real(kPi)) {
  if (phi != Real(kPi)) {
    throw std::invalid_argument("deterministic_cluster_conversion: requires phi = pi");
  }
  const PureState<Real> chain = build_uniform_chain(ChainSpec<Real>(n, phi));
  const std::vector<MeasurementBasis<Real>> bases(n, MeasurementBasis<Real>::x_basis());
  auto branches = run_concentration(chain, bases);

  const PureState<Real> target = ghz_state<Real>(n + 1);
  const auto& gates = detail::correction_gate_set<Real>();
  const int num_survivors = n + 1;

  for (auto& branch : branches) {
    if (!branch.post_state) {
      throw std::logic_error("deterministic_cluster_conversion: degenerate branch");
    }
    std::vector<std::size_t> pick(num_survivors, 0);
    bool found = false;
    while (!found) {
      PureState<Real> candidate = *branch.post_state;
      for (int q = 1; q <= num_survivors; ++q) {
        if (pick[q - 1] != 0) {
          candidate = apply_single_qubit_gate(candidate, q, gates[pick[q - 1]]);
        }
      }
      if (std::norm(inner_product(target, candidate)) >= Real(1) - Real(1e-10)) {
        branch.post_state = std::move(candidate);
        branch.corrected = true;
        found = true;
        break;
      }
      // odometer increment
      int q = 0;
      while (q < num_survivors) {
        if (++pick[q] < gates.size()) break;
        pick[q] = 0;
        ++q;
      }
      if (q == num_survivors) break;
    }
    if (!found) {
      throw std::logic_error(
          "deterministic_cluster_conversion: no single-qubit correction found");
    }
  }
  return branches;
}

}  // namespace wgsc
