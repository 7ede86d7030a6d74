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

#include "occluded/solver.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include <Eigen/QR>

namespace occluded {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double MaxNorm(const Eigen::VectorXd& r) {
  if (!r.allFinite()) return kInf;
  return r.size() == 0 ? 0.0 : r.cwiseAbs().maxCoeff();
}

double SquaredNorm(const Eigen::VectorXd& r) {
  return r.allFinite() ? r.squaredNorm() : kInf;
}

struct NewtonResult {
  Eigen::VectorXd u;
  double residual = kInf;
  int iterations = 0;
  bool converged = false;
};

NewtonResult Newton(const ResidualSystem& system, Eigen::VectorXd u,
                    const SolverConfig& config) {
  NewtonResult out;
  Eigen::VectorXd r = system.Residual(u);
  for (int iter = 0;; ++iter) {
    out.u = u;
    out.residual = MaxNorm(r);
    out.iterations = iter;
    if (out.residual <= config.tol) {
      out.converged = true;
      return out;
    }
    if (iter >= config.max_iters || !std::isfinite(out.residual)) return out;

    // Minimum-norm least-squares step; exact Newton when J is regular.
    const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(
        system.Jacobian(u));
    const Eigen::VectorXd step = cod.solve(-r);
    if (!step.allFinite()) return out;

    const double merit = SquaredNorm(r);
    double lambda = 1.0;
    bool accepted = false;
    while (lambda >= config.min_step) {
      Eigen::VectorXd trial = u + lambda * step;
      Eigen::VectorXd trial_r = system.Residual(trial);
      if (SquaredNorm(trial_r) < merit) {
        u = std::move(trial);
        r = std::move(trial_r);
        accepted = true;
        break;
      }
      lambda *= config.backtrack;
    }
    if (!accepted) return out;
  }
}

}  // namespace

double BendingScore(std::span<const Point> points) {
  double score = 0.0;
  for (std::size_t i = 0; i + 2 < points.size(); ++i) {
    score += (points[i + 2] - 2.0 * points[i + 1] + points[i]).squaredNorm();
  }
  return score;
}

Eigen::VectorXd DefaultInitialGuess(const NormalizedScene& scene,
                                    const UnknownLayout& layout) {
  const double d = scene.gap();
  const double left_len = scene.left_tangent().norm();
  const double right_len = scene.right_tangent().norm();
  if (left_len == 0.0 || right_len == 0.0) {
    throw Error(ErrorCode::kDegenerateScene, "solver",
                "an input curve has a zero-length end tangent");
  }
  Eigen::VectorXd u(layout.unknown_count());
  u[0] = d / (3.0 * left_len);
  u[1] = d / (3.0 * right_len);
  const int n = layout.point_count;
  for (std::size_t k = 0; k < layout.free.size(); ++k) {
    const auto& f = layout.free[k];
    // The chord runs along +x from the origin to (d, 0, 0).
    u[2 + k] = f.coord == 0 ? d * (f.point - 1) / (n - 1) : 0.0;
  }
  return u;
}

std::vector<Eigen::VectorXd> MultistartGrid(const NormalizedScene& scene,
                                            const UnknownLayout& layout,
                                            const SolverConfig& config) {
  const Eigen::VectorXd guess = DefaultInitialGuess(scene, layout);
  std::vector<Eigen::VectorXd> grid;
  for (double sa : config.scales) {
    for (double sb : config.scales) {
      Eigen::VectorXd u = guess;
      u[0] *= sa;
      u[1] *= sb;
      grid.push_back(std::move(u));
    }
  }
  const bool mirrored = std::any_of(
      layout.ties.begin(), layout.ties.end(), [](const CoordinateTie& t) {
        return t.prev_weight < 0.0 || t.next_weight < 0.0;
      });
  if (mirrored && !layout.free.empty()) {
    const std::size_t base = grid.size();
    for (std::size_t i = 0; i < base; ++i) {
      Eigen::VectorXd u = grid[i];
      u.tail(u.size() - 2) *= -1.0;
      grid.push_back(std::move(u));
    }
  }
  if (config.seed) {
    std::mt19937_64 rng(*config.seed);
    std::uniform_real_distribution<double> log_scale(std::log(0.25),
                                                     std::log(4.0));
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    for (int s = 0; s < config.seeded_starts; ++s) {
      Eigen::VectorXd u = guess;
      u[0] *= std::exp(log_scale(rng));
      u[1] *= std::exp(log_scale(rng));
      for (Eigen::Index k = 2; k < u.size(); ++k) {
        u[k] += scene.gap() * jitter(rng);
      }
      grid.push_back(std::move(u));
    }
  }
  return grid;
}

Solution Solve(const ResidualSystem& system,
               std::span<const Eigen::VectorXd> starts,
               const SolverConfig& config) {
  if (!(config.tol > 0.0) || config.max_iters < 1) {
    throw Error(ErrorCode::kInvalidArgument, "solver",
                "tol must be positive and max_iters at least 1");
  }
  if (starts.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "solver", "no starting points");
  }

  std::optional<Solution> best;
  double best_score = kInf;
  std::optional<Solution> rejected;
  double best_residual = kInf;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    if (starts[s].size() != system.unknown_count()) {
      throw Error(ErrorCode::kInvalidArgument, "solver",
                  "start " + std::to_string(s) + " has the wrong size");
    }
    NewtonResult run = Newton(system, starts[s], config);
    best_residual = std::min(best_residual, run.residual);
    if (!run.converged) continue;

    Solution sol{.unknowns = run.u,
                 .control_points = system.Reconstruct(run.u),
                 .residual_norm = run.residual,
                 .iterations = run.iterations,
                 .start_used = static_cast<int>(s)};
    if (!(sol.alpha() > 0.0 && sol.beta() > 0.0)) {
      if (!rejected) rejected = std::move(sol);
      continue;
    }
    const double score = BendingScore(sol.control_points);
    if (!best || score < best_score * (1.0 - 1e-9) - 1e-14) {
      best_score = score;
      best = std::move(sol);
    }
  }

  if (!best) {
    if (rejected) {
      throw SolveError(
          ErrorCode::kOrientation,
          "every converged root has alpha <= 0 or beta <= 0 (alpha = " +
              std::to_string(rejected->alpha()) +
              ", beta = " + std::to_string(rejected->beta()) + ")",
          rejected->residual_norm, rejected);
    }
    throw SolveError(ErrorCode::kConvergence,
                     "no start converged; best residual " +
                         std::to_string(best_residual),
                     best_residual);
  }
  // Re-certify on a fresh evaluation.
  best->residual_norm = MaxNorm(system.Residual(best->unknowns));
  return *best;
}

}  // namespace occluded
