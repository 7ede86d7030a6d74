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

#ifndef OCCLUDED_EULER_LAGRANGE_HPP_
#define OCCLUDED_EULER_LAGRANGE_HPP_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "occluded/lagrangian.hpp"
#include "occluded/rigid_motion.hpp"
#include "occluded/spline.hpp"

namespace occluded {

// ---------------------------------------------------------------------------
// Shift operator on finitely supported scalar sequences.

struct Sequence {
  int first = 0;
  std::vector<double> values;

  int last() const { return first + static_cast<int>(values.size()) - 1; }
  // Zero outside the stored support.
  double At(int i) const;
};

// Applies (S - id)^power, or (S^-1 - id)^power when `inverse` is set, where
// (S s)_i = s_{i+1}. The result covers the full support of the image.
Sequence ShiftDifference(const Sequence& seq, int power, bool inverse);
// Same, restricted to indices [first, last].
Sequence ShiftDifference(const Sequence& seq, int power, bool inverse,
                         int first, int last);

// E_i(L) = dL/dI_i + sum_l (S^-1 - id)^l dL/dI_{i,l} for each free point,
// laid out like GradLagrangian. Summation by parts makes this equal to the
// direct gradient.
Eigen::VectorXd ElOperatorForm(const LagrangianExpr& expr,
                               const DifferenceTable& table,
                               std::span<const int> free_indices);

// ---------------------------------------------------------------------------
// Scenes.

struct Topology {
  int degree = 3;
  int pieces = 1;
  int point_count() const { return degree + pieces; }
  KnotVector knots() const { return KnotVector::Uniform(degree, pieces); }
  friend bool operator==(const Topology&, const Topology&) = default;
};

class Scene {
 public:
  // Throws Error(kInvalidArgument) on dimension mismatch or curves with fewer
  // than two points, Error(kDegenerateScene) when the boundary points meet.
  Scene(BSplineCurve left, BSplineCurve right,
        std::optional<Topology> solution = std::nullopt);

  const BSplineCurve& left() const { return left_; }
  const BSplineCurve& right() const { return right_; }
  const std::optional<Topology>& solution() const { return solution_; }
  int dim() const { return left_.dim(); }

  Scene WithSolution(Topology topology) const;

 private:
  BSplineCurve left_;
  BSplineCurve right_;
  std::optional<Topology> solution_;
};

// Input curves in normalized position.
struct NormalizedScene {
  RigidTransform transform;  // original -> normalized
  std::vector<Point> left;
  std::vector<Point> right;

  int dim() const { return static_cast<int>(left.front().size()); }
  double gap() const { return right.front().norm(); }
  // p1 - p0: direction of the left curve at the gap.
  Point left_tangent() const { return left.back() - left[left.size() - 2]; }
  // Direction the right curve leaves the gap in.
  Point right_tangent() const { return right[1] - right.front(); }
};

NormalizedScene NormalizeScene(const Scene& scene);

// ---------------------------------------------------------------------------
// Boundary reduction.

// How the second-to-last solution point is tied to the right curve.
enum class BoundaryForm {
  kTangentLine,  // p_{N-1} = p_N + beta (p_N - p_{N+1})
  kLiteral,      // p_{N-1} = beta (p_N - p_{N+1})
};

// Coordinate `coord` of solution point `point` (1-based) equals
// prev_weight * (same coordinate of point-1) + next_weight * (of point+1).
struct CoordinateTie {
  int point = 0;
  int coord = 0;
  double prev_weight = 0.0;
  double next_weight = 0.0;
  friend bool operator==(const CoordinateTie&, const CoordinateTie&) = default;
};

struct FreeCoordinate {
  int point = 0;  // 1-based solution index
  int coord = 0;
};

// Unknown vector u = (alpha, beta, free interior coordinates...).
struct UnknownLayout {
  int dim = 2;
  int point_count = 4;
  BoundaryForm form = BoundaryForm::kTangentLine;
  std::vector<CoordinateTie> ties;
  std::vector<FreeCoordinate> free;
  int equation_count = 0;  // independent Euler-Lagrange equations

  int unknown_count() const { return 2 + static_cast<int>(free.size()); }
};

class ResidualSystem;

// Lays out the unknowns for `topology` and checks that the Lagrangian yields
// as many independent equations as there are unknowns. Throws
// Error(kBalance) naming both counts otherwise.
UnknownLayout BuildLayout(const NormalizedScene& scene,
                          const Topology& topology,
                          const LagrangianExpr& expr,
                          std::span<const CoordinateTie> ties = {},
                          BoundaryForm form = BoundaryForm::kTangentLine);

// residual(u) = grad_u L(reconstruct(u)), exact; jacobian by central
// differences of the residual.
class ResidualSystem {
 public:
  ResidualSystem(const NormalizedScene& scene, const LagrangianExpr& expr,
                 UnknownLayout layout);
  ~ResidualSystem();
  ResidualSystem(ResidualSystem&&) noexcept;
  ResidualSystem& operator=(ResidualSystem&&) noexcept;

  int unknown_count() const;
  const UnknownLayout& layout() const;

  // Solution control points (normalized) for unknowns u; affine in u.
  std::vector<Point> Reconstruct(const Eigen::VectorXd& u) const;
  // Full control sequence: left curve, solution, right curve.
  std::vector<Point> FullSequence(const Eigen::VectorXd& u) const;
  // Table index of the first element of FullSequence.
  int first_index() const;

  double Total(const Eigen::VectorXd& u) const;
  Eigen::VectorXd Residual(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd Jacobian(const Eigen::VectorXd& u) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline ResidualSystem AssembleSystem(const NormalizedScene& scene,
                                     const LagrangianExpr& expr,
                                     UnknownLayout layout) {
  return ResidualSystem(scene, expr, std::move(layout));
}

}  // namespace occluded

#endif  // OCCLUDED_EULER_LAGRANGE_HPP_
