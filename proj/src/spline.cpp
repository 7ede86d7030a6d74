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

#include "occluded/spline.hpp"

#include <cmath>
#include <string>

#include "occluded/error.hpp"

namespace occluded {
namespace {

constexpr std::string_view kModule = "spline";

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kInvalidArgument, kModule, message);
}

// Index of the last span [t_i, t_{i+1}) with t_i < t_{i+1}; this span is
// treated as closed on the right.
int LastSpan(const KnotVector& kv) {
  for (int i = static_cast<int>(kv.size()) - 2; i >= 0; --i) {
    if (kv[i] < kv[i + 1]) return i;
  }
  return -1;
}

double BasisImpl(int i, int k, double t, const KnotVector& kv, int last_span) {
  if (k == 0) {
    if (kv[i] < kv[i + 1] && kv[i] <= t && t < kv[i + 1]) return 1.0;
    if (i == last_span && t == kv[i + 1]) return 1.0;
    return 0.0;
  }
  double value = 0.0;
  const double left_width = kv[i + k] - kv[i];
  if (left_width > 0.0) {
    value += (t - kv[i]) / left_width * BasisImpl(i, k - 1, t, kv, last_span);
  }
  const double right_width = kv[i + k + 1] - kv[i + 1];
  if (right_width > 0.0) {
    value += (kv[i + k + 1] - t) / right_width *
             BasisImpl(i + 1, k - 1, t, kv, last_span);
  }
  return value;
}

double DerivativeImpl(int i, int k, double t, const KnotVector& kv, int order,
                      int last_span) {
  if (order == 0) return BasisImpl(i, k, t, kv, last_span);
  if (k == 0) return 0.0;
  double value = 0.0;
  const double left_width = kv[i + k] - kv[i];
  if (left_width > 0.0) {
    value += k / left_width *
             DerivativeImpl(i, k - 1, t, kv, order - 1, last_span);
  }
  const double right_width = kv[i + k + 1] - kv[i + 1];
  if (right_width > 0.0) {
    value -= k / right_width *
             DerivativeImpl(i + 1, k - 1, t, kv, order - 1, last_span);
  }
  return value;
}

void CheckBasisArgs(int i, int k, double t, const KnotVector& kv) {
  if (k < 0 || k > kv.degree()) {
    Fail("basis degree " + std::to_string(k) + " outside [0, " +
         std::to_string(kv.degree()) + "]");
  }
  const int count = static_cast<int>(kv.size()) - k - 1;
  if (i < 0 || i >= count) {
    Fail("basis index " + std::to_string(i) + " outside [0, " +
         std::to_string(count) + ")");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    Fail("parameter " + std::to_string(t) + " outside [0, 1]");
  }
}

}  // namespace

KnotVector::KnotVector(std::vector<double> knots, int degree)
    : knots_(std::move(knots)), degree_(degree) {
  if (degree_ < 1) Fail("degree must be at least 1");
  const auto m = static_cast<int>(knots_.size());
  if (m < 2 * (degree_ + 1)) {
    Fail("knot vector of length " + std::to_string(m) +
         " is too short for degree " + std::to_string(degree_));
  }
  for (int i = 0; i < m; ++i) {
    if (!std::isfinite(knots_[i]) || knots_[i] < 0.0 || knots_[i] > 1.0) {
      Fail("knot " + std::to_string(i) + " outside [0, 1]");
    }
    if (i > 0 && knots_[i] < knots_[i - 1]) {
      Fail("knots must be non-decreasing");
    }
  }
  for (int i = 0; i <= degree_; ++i) {
    if (knots_[i] != 0.0 || knots_[m - 1 - i] != 1.0) {
      Fail("knot vector is not clamped: the first and last " +
           std::to_string(degree_ + 1) + " knots must be 0 and 1");
    }
  }
}

KnotVector KnotVector::Uniform(int degree, int pieces) {
  if (degree < 1) Fail("degree must be at least 1");
  if (pieces < 1) Fail("pieces must be at least 1");
  std::vector<double> knots(degree + 1, 0.0);
  for (int j = 1; j < pieces; ++j) {
    knots.push_back(static_cast<double>(j) / pieces);
  }
  knots.insert(knots.end(), degree + 1, 1.0);
  return KnotVector(std::move(knots), degree);
}

int KnotVector::piece_count() const {
  int pieces = 0;
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    if (knots_[i] < knots_[i + 1]) ++pieces;
  }
  return pieces;
}

double Basis(int i, int k, double t, const KnotVector& knots) {
  CheckBasisArgs(i, k, t, knots);
  return BasisImpl(i, k, t, knots, LastSpan(knots));
}

double BasisDerivative(int i, int k, double t, const KnotVector& knots,
                       int order) {
  CheckBasisArgs(i, k, t, knots);
  if (order < 0) Fail("derivative order must be non-negative");
  return DerivativeImpl(i, k, t, knots, order, LastSpan(knots));
}

void CheckPoints(std::span<const Point> points) {
  if (points.empty()) Fail("no control points");
  const auto dim = points.front().size();
  if (dim != 2 && dim != 3) {
    Fail("points must be 2D or 3D, got dimension " + std::to_string(dim));
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      Fail("point " + std::to_string(i) + " has mismatched dimension");
    }
    if (!points[i].allFinite()) {
      Fail("point " + std::to_string(i) + " is not finite");
    }
  }
}

BSplineCurve::BSplineCurve(KnotVector knots, std::vector<Point> points)
    : knots_(std::move(knots)), points_(std::move(points)) {
  CheckPoints(points_);
  if (static_cast<int>(points_.size()) != knots_.point_count()) {
    Fail("knot vector of length " + std::to_string(knots_.size()) +
         " and degree " + std::to_string(knots_.degree()) + " requires " +
         std::to_string(knots_.point_count()) + " control points, got " +
         std::to_string(points_.size()));
  }
}

Point BSplineCurve::Evaluate(double t) const { return Derivative(t, 0); }

Point BSplineCurve::Derivative(double t, int order) const {
  Point result = Point::Zero(dim());
  const int k = degree();
  for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
    const double b = order == 0 ? Basis(i, k, t, knots_)
                                : BasisDerivative(i, k, t, knots_, order);
    if (b != 0.0) result += b * points_[i];
  }
  return result;
}

std::pair<Point, Point> EndTangents(const BSplineCurve& curve) {
  const auto& p = curve.points();
  if (p.size() < 2) Fail("end tangents need at least 2 control points");
  return {p[1] - p[0], p[p.size() - 1] - p[p.size() - 2]};
}

std::vector<Point> SamplePolyline(const BSplineCurve& curve, int count) {
  if (count < 2) Fail("sample count must be at least 2");
  std::vector<Point> samples;
  samples.reserve(count);
  for (int s = 0; s < count; ++s) {
    const double t = s == count - 1 ? 1.0 : static_cast<double>(s) / (count - 1);
    samples.push_back(curve.Evaluate(t));
  }
  return samples;
}

}  // namespace occluded
