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

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wgsc {

template <typename Real>
using ComplexT = std::complex<Real>;

template <typename Real>
using VectorXc = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using MatrixXc = Eigen::Matrix<ComplexT<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using Vector2c = Eigen::Matrix<ComplexT<Real>, 2, 1>;

template <typename Real>
using Matrix2c = Eigen::Matrix<ComplexT<Real>, 2, 2>;

template <typename Real>
using Matrix4c = Eigen::Matrix<ComplexT<Real>, 4, 4>;

inline constexpr double kPi = std::numbers::pi;

// Contract tolerances (part of the public numeric contract).
inline constexpr double kNormTol = 1e-12;        // state norm / trace deviation
inline constexpr double kUnitaryTol = 1e-12;     // gate unitarity deviation
inline constexpr double kPsdTol = 1e-10;         // eigenvalues >= -kPsdTol
inline constexpr double kBasisTol = 1e-14;       // basis orthonormality
inline constexpr double kNullBranchTol = 1e-14;  // branches below this have no post-state
inline constexpr double kPurityTol = 1e-10;      // reduced purity required for discard

// Maximum register size for the dense representations.
inline constexpr int kMaxQubits = 12;

// Parses an angle literal: either a decimal radian value ("2.51327") or a
// multiple of pi written as "<x>pi" ("0.8pi", "-1pi", "pi").
inline double parse_angle(const std::string& text) {
  std::string s = text;
  bool times_pi = false;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    times_pi = true;
    s = s.substr(0, s.size() - 2);
    if (s.empty() || s == "+" || s == "-") s += "1";
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid angle literal: '" + text + "'");
  }
  if (used != s.size()) {
    throw std::invalid_argument("invalid angle literal: '" + text + "'");
  }
  return times_pi ? value * kPi : value;
}

}  // namespace wgsc
