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

#ifndef OCCLUDED_RIGID_MOTION_HPP_
#define OCCLUDED_RIGID_MOTION_HPP_

#include <Eigen/Core>

#include "occluded/spline.hpp"

namespace occluded {

// Element of SE(2) or SE(3) acting as p -> R p + t.
class RigidTransform {
 public:
  // Throws Error(kInvalidArgument) unless R is a proper rotation
  // (R^T R = I and det R = +1 within 1e-9) of matching dimension.
  RigidTransform(Eigen::MatrixXd rotation, Eigen::VectorXd translation);

  static RigidTransform Identity(int dim);
  static RigidTransform Rotation2d(double angle);

  const Eigen::MatrixXd& rotation() const { return rotation_; }
  const Eigen::VectorXd& translation() const { return translation_; }
  int dim() const { return static_cast<int>(translation_.size()); }

  Point Apply(const Point& p) const;
  RigidTransform Inverse() const;

  // (this * other)(p) == this->Apply(other.Apply(p)).
  RigidTransform Compose(const RigidTransform& other) const;

 private:
  Eigen::MatrixXd rotation_;
  Eigen::VectorXd translation_;
};

// Maps left_end to the origin and right_start onto the positive x-axis.
RigidTransform Normalize2d(const Point& left_end, const Point& right_start);

// 3D counterpart of Normalize2d. The roll about the x-axis is fixed by
// rotating `aux` (the left curve's second-to-last control point) into the
// upper half of the xy-plane. When aux lies on the chord line the roll is
// the one given by the minimal rotation taking the chord onto +x.
RigidTransform Normalize3d(const Point& left_end, const Point& right_start,
                           const Point& aux);

}  // namespace occluded

#endif  // OCCLUDED_RIGID_MOTION_HPP_
