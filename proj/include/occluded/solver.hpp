// Copyright 2026 The occluded Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OCCLUDED_SOLVER_HPP_
#define OCCLUDED_SOLVER_HPP_

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "occluded/error.hpp"
#include "occluded/euler_lagrange.hpp"

namespace occluded {

struct SolverConfig {
  double tol = 1e-10;  // max-norm of the residual
  int max_iters = 100;
  double backtrack = 0.5;
  double min_step = std::ldexp(1.0, -30);
  // Multipliers applied to the default (alpha, beta) to form the start grid.
  std::vector<double> scales = {0.5, 1.0, 2.0};
  // When set, appends `seeded_starts` randomly perturbed starts.
  std::optional<std::uint64_t> seed;
  int seeded_starts = 8;
};

struct Solution {
  Eigen::VectorXd unknowns;
  std::vector<Point> control_points;  // normalized
  double residual_norm = 0.0;
  int iterations = 0;
  int start_used = 0;

  double alpha() const { return unknowns[0]; }
  double beta() const { return unknowns[1]; }
};

// Raised for convergence failures (no `root`) and orientation failures, where
// `root` holds the best converged root with alpha <= 0 or beta <= 0.
class SolveError : public Error {
 public:
  SolveError(ErrorCode code, const std::string& message, double best_residual,
             std::optional<Solution> root = std::nullopt)
      : Error(code, "solver", message),
        best_residual_(best_residual),
        root_(std::move(root)) {}

  double best_residual() const { return best_residual_; }
  const std::optional<Solution>& root() const { return root_; }

 private:
  double best_residual_;
  std::optional<Solution> root_;
};

// alpha0 = d / (3 |p1 - p0|), beta0 = d / (3 |pN - pN+1|); free interior
// coordinates start on the chord. Throws Error(kDegenerateScene) for a
// zero-length end tangent.
Eigen::VectorXd DefaultInitialGuess(const NormalizedScene& scene,
                                    const UnknownLayout& layout);

// Default guess with (alpha, beta) scaled by every pair of config.scales,
// then the same grid with free coordinates negated when any coordinate is
// tied with negative weights, then seeded perturbations if requested.
std::vector<Eigen::VectorXd> MultistartGrid(const NormalizedScene& scene,
                                            const UnknownLayout& layout,
                                            const SolverConfig& config);

// Damped Newton from every start. Among converged roots with alpha, beta > 0
// the one with the smallest sum of squared second differences of the
// solution points wins, ties going to the earlier start.
Solution Solve(const ResidualSystem& system,
               std::span<const Eigen::VectorXd> starts,
               const SolverConfig& config = {});

// Sum of |p_{i+2} - 2 p_{i+1} + p_i|^2 over a control polygon.
double BendingScore(std::span<const Point> points);

}  // namespace occluded

#endif  // OCCLUDED_SOLVER_HPP_
