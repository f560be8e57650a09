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

// Numerical optimization of the middle-qubit measurement basis of a 3-qubit
// state, maximizing the post-selected two-qubit concurrence. Coarse grid over
// the full (theta, lambda) projective-basis family, then derivative-free
// simplex refinement from the best grid points.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wgsc/core.hpp"
#include "wgsc/metrics.hpp"
#include "wgsc/qsim.hpp"

namespace wgsc {

template <typename Real = double>
struct OptimizationResult {
  MeasurementBasis<Real> best_basis;
  Real best_concurrence = 0;
  int best_branch = 0;  // outcome label, +1 or -1
  Real success_probability = 0;
  long evaluations = 0;
};

// Concurrences and probabilities of both branches of one middle-qubit
// measurement. Branch ties are broken toward outcome -1.
template <typename Real = double>
struct BasisEvaluation {
  Real concurrence_plus = 0;
  Real concurrence_minus = 0;
  Real probability_plus = 0;
  Real probability_minus = 0;
  int best_branch = -1;
  Real best_concurrence = 0;
  Real best_probability = 0;
};

template <typename StateT, typename Real = typename StateT::RealType>
BasisEvaluation<Real> evaluate_middle_measurement(const StateT& state,
                                                  const MeasurementBasis<Real>& basis) {
  if (state.num_qubits != 3) {
    throw std::invalid_argument("evaluate_middle_measurement: needs a 3-qubit state");
  }
  const auto branches = measure_and_remove(state, 2, basis);
  BasisEvaluation<Real> eval;
  Real c[2] = {0, 0};
  for (int k = 0; k < 2; ++k) {
    if (branches[k].post_state) {
      c[k] = concurrence(*branches[k].post_state).value;
    }
  }
  eval.concurrence_plus = c[0];
  eval.concurrence_minus = c[1];
  eval.probability_plus = branches[0].probability;
  eval.probability_minus = branches[1].probability;
  if (eval.concurrence_minus >= eval.concurrence_plus - Real(1e-12)) {
    eval.best_branch = -1;
    eval.best_concurrence = eval.concurrence_minus;
    eval.best_probability = eval.probability_minus;
  } else {
    eval.best_branch = +1;
    eval.best_concurrence = eval.concurrence_plus;
    eval.best_probability = eval.probability_plus;
  }
  return eval;
}

// M basis with phi' = (phi12 + phi23)/2; seeds and validates the optimizer.
template <typename Real>
MeasurementBasis<Real> analytic_basis_guess(Real phi12, Real phi23) {
  return MeasurementBasis<Real>::equatorial((phi12 + phi23) / 2);
}

namespace detail {

// Nelder-Mead on two parameters, minimizing f. Deterministic; stops when the
// simplex diameter falls below param_tol or after max_evals evaluations.
template <typename Real, typename F>
std::array<Real, 2> nelder_mead_2d(F&& f, std::array<Real, 2> start,
                                   std::array<Real, 2> step, Real param_tol,
                                   long max_evals) {
  struct Point {
    std::array<Real, 2> x;
    Real value;
  };
  auto eval = [&](const std::array<Real, 2>& x) { return f(x); };
  std::array<Point, 3> simplex;
  simplex[0] = {start, eval(start)};
  simplex[1] = {{start[0] + step[0], start[1]}, 0};
  simplex[1].value = eval(simplex[1].x);
  simplex[2] = {{start[0], start[1] + step[1]}, 0};
  simplex[2].value = eval(simplex[2].x);

  const Real alpha = 1, gamma = 2, beta = Real(0.5), sigma = Real(0.5);
  long local_evals = 3;
  while (local_evals < max_evals) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Point& a, const Point& b) { return a.value < b.value; });
    const Real diameter = std::max(
        std::max(std::abs(simplex[1].x[0] - simplex[0].x[0]),
                 std::abs(simplex[1].x[1] - simplex[0].x[1])),
        std::max(std::abs(simplex[2].x[0] - simplex[0].x[0]),
                 std::abs(simplex[2].x[1] - simplex[0].x[1])));
    if (diameter < param_tol) break;

    const std::array<Real, 2> centroid = {(simplex[0].x[0] + simplex[1].x[0]) / 2,
                                          (simplex[0].x[1] + simplex[1].x[1]) / 2};
    auto along = [&](Real t) -> std::array<Real, 2> {
      return {centroid[0] + t * (simplex[2].x[0] - centroid[0]),
              centroid[1] + t * (simplex[2].x[1] - centroid[1])};
    };

    const std::array<Real, 2> xr = along(-alpha);
    const Real fr = eval(xr);
    ++local_evals;
    if (fr < simplex[0].value) {
      const std::array<Real, 2> xe = along(-gamma);
      const Real fe = eval(xe);
      ++local_evals;
      simplex[2] = fe < fr ? Point{xe, fe} : Point{xr, fr};
    } else if (fr < simplex[1].value) {
      simplex[2] = {xr, fr};
    } else {
      const std::array<Real, 2> xc = along(fr < simplex[2].value ? -beta : beta);
      const Real fc = eval(xc);
      ++local_evals;
      if (fc < std::min(fr, simplex[2].value)) {
        simplex[2] = {xc, fc};
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          simplex[i].x = {simplex[0].x[0] + sigma * (simplex[i].x[0] - simplex[0].x[0]),
                          simplex[0].x[1] + sigma * (simplex[i].x[1] - simplex[0].x[1])};
          simplex[i].value = eval(simplex[i].x);
          ++local_evals;
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Point& a, const Point& b) { return a.value < b.value; });
  return simplex[0].x;
}

}  // namespace detail

// Maximizes the best-branch concurrence over the full projective-basis family
// (theta, lambda): 25 x 50 coarse grid, then simplex refinement (parameter
// tolerance 1e-7) multi-started from the 4 best grid points.
template <typename StateT, typename Real = typename StateT::RealType>
OptimizationResult<Real> optimize_basis(const StateT& state) {
  if (state.num_qubits != 3) {
    throw std::invalid_argument("optimize_basis: needs a 3-qubit state");
  }

  long evaluations = 0;
  auto objective = [&](Real theta, Real lambda) -> Real {
    ++evaluations;
    const MeasurementBasis<Real> basis(theta, lambda);
    return evaluate_middle_measurement(state, basis).best_concurrence;
  };

  constexpr int kThetaPoints = 25;
  constexpr int kLambdaPoints = 50;
  const Real dtheta = Real(kPi) / (kThetaPoints - 1);
  const Real dlambda = Real(2 * kPi) / kLambdaPoints;

  struct GridPoint {
    Real theta, lambda, value;
  };
  std::vector<GridPoint> grid;
  grid.reserve(kThetaPoints * kLambdaPoints);
  for (int i = 0; i < kThetaPoints; ++i) {
    for (int j = 0; j < kLambdaPoints; ++j) {
      const Real theta = i * dtheta;
      const Real lambda = j * dlambda;
      grid.push_back({theta, lambda, objective(theta, lambda)});
    }
  }
  std::stable_sort(grid.begin(), grid.end(),
                   [](const GridPoint& a, const GridPoint& b) { return a.value > b.value; });

  Real best_theta = grid[0].theta;
  Real best_lambda = grid[0].lambda;
  Real best_value = grid[0].value;
  const int starts = std::min<int>(4, static_cast<int>(grid.size()));
  for (int s = 0; s < starts; ++s) {
    auto minimize_me = [&](const std::array<Real, 2>& x) {
      return -objective(x[0], x[1]);
    };
    const auto refined = detail::nelder_mead_2d<Real>(
        minimize_me, {grid[s].theta, grid[s].lambda}, {dtheta / 2, dlambda / 2},
        Real(1e-7), 400);
    const Real value = objective(refined[0], refined[1]);
    if (value > best_value) {
      best_value = value;
      best_theta = refined[0];
      best_lambda = refined[1];
    }
  }

  const MeasurementBasis<Real> best_basis(best_theta, best_lambda);
  const auto eval = evaluate_middle_measurement(state, best_basis);
  OptimizationResult<Real> result;
  result.best_basis = best_basis;
  result.best_concurrence = eval.best_concurrence;
  result.best_branch = eval.best_branch;
  result.success_probability = eval.best_probability;
  result.evaluations = evaluations;
  return result;
}

}  // namespace wgsc
