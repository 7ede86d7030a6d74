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

#include "occluded/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "occluded/error.hpp"

namespace occluded {
namespace {

constexpr std::string_view kModule = "planner";
constexpr int kArcTableSize = 4096;
constexpr int kCurvatureSamples = 512;
constexpr double kCurvatureFloor = 1e-9;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

// Parameter at which the cumulative arc length reaches `target`.
double ParameterAtLength(const std::vector<double>& cumulative, double target) {
  const auto it =
      std::lower_bound(cumulative.begin(), cumulative.end(), target);
  if (it == cumulative.begin()) return 0.0;
  if (it == cumulative.end()) return 1.0;
  const auto i = static_cast<int>(it - cumulative.begin());
  const double span = cumulative[i] - cumulative[i - 1];
  const double frac = span > 0.0 ? (target - cumulative[i - 1]) / span : 0.0;
  return (i - 1 + frac) / (kArcTableSize - 1);
}

int Sign(double v, double scale) {
  if (std::abs(v) <= 1e-12 * scale) return 0;
  return v > 0.0 ? 1 : -1;
}

}  // namespace

std::string_view ToString(TangentCase c) {
  switch (c) {
    case TangentCase::kBaseline: return "baseline";
    case TangentCase::kCase1: return "case1";
    case TangentCase::kCase2: return "case2";
  }
  return "unknown";
}

std::string_view ToString(Realization r) {
  switch (r) {
    case Realization::kOnePieceCubic: return "one_piece_cubic";
    case Realization::kTwoPieceCubic: return "two_piece_cubic";
    case Realization::kOnePieceQuartic: return "one_piece_quartic";
  }
  return "unknown";
}

Topology TopologyOf(Realization r) {
  switch (r) {
    case Realization::kOnePieceCubic: return {3, 1};
    case Realization::kTwoPieceCubic: return {3, 2};
    case Realization::kOnePieceQuartic: return {4, 1};
  }
  return {3, 1};
}

double SignedCurvature(const BSplineCurve& curve, double t) {
  if (curve.dim() != 2) {
    Fail(ErrorCode::kInvalidArgument, "signed curvature needs a 2D curve");
  }
  const Point d1 = curve.Derivative(t, 1);
  const Point d2 = curve.Derivative(t, 2);
  const double speed = d1.norm();
  if (speed == 0.0) return std::nan("");
  return (d1[0] * d2[1] - d1[1] * d2[0]) / (speed * speed * speed);
}

InflectionCount CountInflections(const BSplineCurve& curve, double window,
                                 CurveEnd end) {
  if (curve.dim() != 2) {
    Fail(ErrorCode::kInvalidArgument, "inflection counting needs a 2D curve");
  }
  if (!(window > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "window must be positive");
  }
  std::vector<double> cumulative(kArcTableSize, 0.0);
  Point prev = curve.Evaluate(0.0);
  for (int i = 1; i < kArcTableSize; ++i) {
    const double t =
        i == kArcTableSize - 1 ? 1.0 : static_cast<double>(i) / (kArcTableSize - 1);
    Point p = curve.Evaluate(t);
    cumulative[i] = cumulative[i - 1] + (p - prev).norm();
    prev = std::move(p);
  }
  const double total = cumulative.back();

  InflectionCount out;
  double t0 = 0.0;
  double t1 = 1.0;
  if (window > total) {
    out.clamped = true;
  } else if (end == CurveEnd::kTrailing) {
    t0 = ParameterAtLength(cumulative, total - window);
  } else {
    t1 = ParameterAtLength(cumulative, window);
  }

  int last_sign = 0;
  for (int s = 0; s < kCurvatureSamples; ++s) {
    const double t = t0 + (t1 - t0) * s / (kCurvatureSamples - 1);
    const double k = SignedCurvature(curve, t);
    if (!std::isfinite(k) || std::abs(k) < kCurvatureFloor) continue;
    const int sign = k > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign != last_sign) ++out.count;
    last_sign = sign;
  }
  return out;
}

TangentCase ClassifyCase(const Point& left_tangent,
                         const Point& right_tangent) {
  const int left = Sign(left_tangent[1], left_tangent.norm());
  const int right = Sign(right_tangent[1], right_tangent.norm());
  if (left == 0 && right == 0) return TangentCase::kBaseline;
  // A single tangent along the chord is grouped with Case 1.
  if (left == 0 || right == 0 || left == right) return TangentCase::kCase1;
  return TangentCase::kCase2;
}

TangentCase ClassifyCase(const NormalizedScene& scene) {
  if (scene.dim() != 2) {
    Fail(ErrorCode::kUnsupported, "case classification is 2D only");
  }
  return ClassifyCase(scene.left_tangent(), scene.right_tangent());
}

std::vector<CoordinateTie> TiesFor(TangentCase c, int point_count) {
  if (point_count != 5) return {};
  switch (c) {
    case TangentCase::kCase1:
      return {{.point = 3, .coord = 0, .prev_weight = 0.5, .next_weight = 0.5}};
    case TangentCase::kCase2:
      return {
          {.point = 3, .coord = 1, .prev_weight = -0.5, .next_weight = -0.5}};
    case TangentCase::kBaseline:
      break;
  }
  return {};
}

int TargetInflections(int left_inflections, int right_inflections) {
  return (left_inflections + right_inflections) / 2;
}

TopologyPlan PlanFromCounts(TangentCase tangent_case, int left_inflections,
                            int right_inflections, int degree_request) {
  if (degree_request != 3 && degree_request != 4) {
    Fail(ErrorCode::kInvalidArgument,
         "degree request must be 3 (two-piece cubic) or 4 (one-piece "
         "quartic), got " +
             std::to_string(degree_request));
  }
  if (left_inflections < 0 || right_inflections < 0) {
    Fail(ErrorCode::kInvalidArgument, "inflection counts must be >= 0");
  }
  TopologyPlan plan{.left_inflections = left_inflections,
                    .right_inflections = right_inflections,
                    .target_inflections =
                        TargetInflections(left_inflections, right_inflections),
                    .tangent_case = tangent_case};
  const int n = plan.target_inflections;
  if (tangent_case == TangentCase::kBaseline ||
      (tangent_case == TangentCase::kCase1 && n <= 1)) {
    plan.realization = Realization::kOnePieceCubic;
    return plan;
  }
  // One inserted point adds at most two inflections to the cubic baseline.
  if (n > 3) {
    Fail(ErrorCode::kUnsupported,
         std::to_string(n) +
             " target inflections need more than one inserted control point");
  }
  plan.realization = degree_request == 3 ? Realization::kTwoPieceCubic
                                         : Realization::kOnePieceQuartic;
  plan.ties = TiesFor(tangent_case, plan.topology().point_count());
  return plan;
}

TopologyPlan Plan(const Scene& scene, const NormalizedScene& normalized,
                  int degree_request, double gap) {
  if (scene.dim() != 2) {
    Fail(ErrorCode::kUnsupported, "complexity planning is 2D only");
  }
  const InflectionCount left =
      CountInflections(scene.left(), gap, CurveEnd::kTrailing);
  const InflectionCount right =
      CountInflections(scene.right(), gap, CurveEnd::kLeading);
  TopologyPlan plan = PlanFromCounts(ClassifyCase(normalized), left.count,
                                     right.count, degree_request);
  plan.gap = gap;
  plan.window_clamped = left.clamped || right.clamped;
  return plan;
}

}  // namespace occluded
