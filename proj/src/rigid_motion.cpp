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

#include "occluded/rigid_motion.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "occluded/error.hpp"

namespace occluded {
namespace {

constexpr std::string_view kModule = "rigid_motion";
constexpr double kRotationTolerance = 1e-9;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

double Chord(const Point& a, const Point& b) {
  if (a.size() != b.size()) {
    Fail(ErrorCode::kInvalidArgument, "point dimensions differ");
  }
  const double d = (b - a).norm();
  const double scale = std::max({1.0, a.norm(), b.norm()});
  if (!(d > 1e-12 * scale)) {
    Fail(ErrorCode::kDegenerateScene,
         "boundary points coincide; the gap has zero length");
  }
  return d;
}

}  // namespace

RigidTransform::RigidTransform(Eigen::MatrixXd rotation,
                               Eigen::VectorXd translation)
    : rotation_(std::move(rotation)), translation_(std::move(translation)) {
  const auto n = translation_.size();
  if (n != 2 && n != 3) {
    Fail(ErrorCode::kInvalidArgument, "transforms must be 2D or 3D");
  }
  if (rotation_.rows() != n || rotation_.cols() != n) {
    Fail(ErrorCode::kInvalidArgument, "rotation/translation size mismatch");
  }
  const double orth =
      (rotation_.transpose() * rotation_ - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (orth > kRotationTolerance ||
      std::abs(rotation_.determinant() - 1.0) > kRotationTolerance) {
    Fail(ErrorCode::kInvalidArgument, "matrix is not a proper rotation");
  }
}

RigidTransform RigidTransform::Identity(int dim) {
  return RigidTransform(Eigen::MatrixXd::Identity(dim, dim),
                        Eigen::VectorXd::Zero(dim));
}

RigidTransform RigidTransform::Rotation2d(double angle) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return RigidTransform(std::move(r), Eigen::VectorXd::Zero(2));
}

Point RigidTransform::Apply(const Point& p) const {
  if (p.size() != translation_.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "cannot apply a " + std::to_string(dim()) + "D transform to a " +
             std::to_string(p.size()) + "D point");
  }
  return rotation_ * p + translation_;
}

RigidTransform RigidTransform::Inverse() const {
  Eigen::MatrixXd rt = rotation_.transpose();
  Eigen::VectorXd t = -(rt * translation_);
  return RigidTransform(std::move(rt), std::move(t));
}

RigidTransform RigidTransform::Compose(const RigidTransform& other) const {
  if (other.dim() != dim()) {
    Fail(ErrorCode::kInvalidArgument, "cannot compose transforms of "
                                      "different dimension");
  }
  return RigidTransform(rotation_ * other.rotation_,
                        rotation_ * other.translation_ + translation_);
}

RigidTransform Normalize2d(const Point& left_end, const Point& right_start) {
  if (left_end.size() != 2) {
    Fail(ErrorCode::kInvalidArgument, "Normalize2d needs 2D points");
  }
  const double d = Chord(left_end, right_start);
  const Eigen::Vector2d u = (right_start - left_end) / d;
  Eigen::MatrixXd r(2, 2);
  r << u.x(), u.y(), -u.y(), u.x();
  Eigen::VectorXd t = -(r * left_end);
  return RigidTransform(std::move(r), std::move(t));
}

RigidTransform Normalize3d(const Point& left_end, const Point& right_start,
                           const Point& aux) {
  if (left_end.size() != 3 || aux.size() != 3) {
    Fail(ErrorCode::kInvalidArgument, "Normalize3d needs 3D points");
  }
  const double d = Chord(left_end, right_start);
  const Eigen::Vector3d e1 = (right_start - left_end) / d;
  const Eigen::Vector3d w = aux - left_end;
  const Eigen::Vector3d w_perp = w - w.dot(e1) * e1;

  Eigen::Matrix3d r;
  if (w_perp.norm() > 1e-12 * std::max(1.0, w.norm())) {
    const Eigen::Vector3d e2 = w_perp.normalized();
    r.row(0) = e1;
    r.row(1) = e2;
    r.row(2) = e1.cross(e2);
  } else {
    // Minimal rotation taking e1 onto +x.
    const Eigen::Vector3d x = Eigen::Vector3d::UnitX();
    const double c = e1.dot(x);
    if (c < -1.0 + 1e-15) {
      r = Eigen::Vector3d(-1.0, -1.0, 1.0).asDiagonal();
    } else {
      r = Eigen::Quaterniond::FromTwoVectors(e1, x).toRotationMatrix();
    }
  }
  Eigen::MatrixXd rotation = r;
  Eigen::VectorXd t = -(rotation * left_end);
  return RigidTransform(std::move(rotation), std::move(t));
}

}  // namespace occluded
