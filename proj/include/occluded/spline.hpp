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

#ifndef OCCLUDED_SPLINE_HPP_
#define OCCLUDED_SPLINE_HPP_

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace occluded {

// A control point or a displacement in 2D or 3D Cartesian space.
using Point = Eigen::VectorXd;

// Clamped knot sequence on [0, 1]: the first degree+1 knots are 0, the last
// degree+1 knots are 1 and the sequence is non-decreasing.
class KnotVector {
 public:
  // Validates the clamped invariants; throws Error(kInvalidArgument).
  KnotVector(std::vector<double> knots, int degree);

  // Uniform clamped vector with pieces-1 interior knots at j/pieces.
  static KnotVector Uniform(int degree, int pieces);

  int degree() const { return degree_; }
  const std::vector<double>& knots() const { return knots_; }
  std::size_t size() const { return knots_.size(); }
  double operator[](std::size_t i) const { return knots_[i]; }

  // Number of control points n with m = n + k + 1.
  int point_count() const {
    return static_cast<int>(knots_.size()) - degree_ - 1;
  }

  // Number of non-empty knot spans.
  int piece_count() const;

  friend bool operator==(const KnotVector&, const KnotVector&) = default;

 private:
  std::vector<double> knots_;
  int degree_;
};

// Cox-de Boor basis function b_{i,k}(t) over `knots` with 0-based index i.
// Zero-width denominators contribute 0, and the last non-empty span is
// closed on the right so that the basis is a partition of unity at t = 1.
double Basis(int i, int k, double t, const KnotVector& knots);

// d^order/dt^order of b_{i,k}(t).
double BasisDerivative(int i, int k, double t, const KnotVector& knots,
                       int order);

class BSplineCurve {
 public:
  BSplineCurve(KnotVector knots, std::vector<Point> points);

  const KnotVector& knots() const { return knots_; }
  const std::vector<Point>& points() const { return points_; }
  int degree() const { return knots_.degree(); }
  int dim() const { return static_cast<int>(points_.front().size()); }
  std::size_t size() const { return points_.size(); }
  const Point& front() const { return points_.front(); }
  const Point& back() const { return points_.back(); }

  Point Evaluate(double t) const;
  Point Derivative(double t, int order) const;

 private:
  KnotVector knots_;
  std::vector<Point> points_;
};

// (p2 - p1, pn - pn-1): tangent directions at t = 0 and t = 1.
std::pair<Point, Point> EndTangents(const BSplineCurve& curve);

// `count` samples at uniform parameters 0, 1/(count-1), ..., 1.
std::vector<Point> SamplePolyline(const BSplineCurve& curve, int count);

// Validates that every point is finite and has dimension 2 or 3, all equal.
void CheckPoints(std::span<const Point> points);

}  // namespace occluded

#endif  // OCCLUDED_SPLINE_HPP_
