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

#ifndef OCCLUDED_PLANNER_HPP_
#define OCCLUDED_PLANNER_HPP_

#include <string_view>
#include <vector>

#include "occluded/euler_lagrange.hpp"
#include "occluded/spline.hpp"

namespace occluded {

// kCase1: end tangents climb on the same side of the chord.
// kCase2: opposite sides. kBaseline: both tangents run along the chord.
enum class TangentCase { kBaseline, kCase1, kCase2 };

enum class Realization { kOnePieceCubic, kTwoPieceCubic, kOnePieceQuartic };

enum class CurveEnd { kLeading, kTrailing };

std::string_view ToString(TangentCase c);
std::string_view ToString(Realization r);

Topology TopologyOf(Realization r);

// Signed curvature (x'y'' - y'x'') / |f'|^3 of a planar curve.
double SignedCurvature(const BSplineCurve& curve, double t);

struct InflectionCount {
  int count = 0;
  bool clamped = false;  // window was longer than the curve
};

// Sign changes of the signed curvature over the arc of length `window`
// ending at t = 1 (kTrailing) or starting at t = 0 (kLeading), sampled at
// 512 points. Samples with |curvature| < 1e-9 are skipped.
InflectionCount CountInflections(const BSplineCurve& curve, double window,
                                 CurveEnd end);

// Uses the y-components of the normalized end tangents.
TangentCase ClassifyCase(const Point& left_tangent, const Point& right_tangent);
TangentCase ClassifyCase(const NormalizedScene& scene);

// Tie on the inserted middle point of a five-point solution:
// kCase1 -> x3 = (x2 + x4) / 2, kCase2 -> y3 = -(y2 + y4) / 2.
std::vector<CoordinateTie> TiesFor(TangentCase c, int point_count);

struct TopologyPlan {
  int left_inflections = 0;
  int right_inflections = 0;
  int target_inflections = 0;
  double gap = 0.0;
  bool window_clamped = false;
  TangentCase tangent_case = TangentCase::kBaseline;
  Realization realization = Realization::kOnePieceCubic;
  std::vector<CoordinateTie> ties;

  Topology topology() const { return TopologyOf(realization); }
};

// n = floor((n1 + n2) / 2).
int TargetInflections(int left_inflections, int right_inflections);

// Decision step of the planner from already-measured counts.
// degree_request picks the five-point realization: 3 -> two-piece cubic,
// 4 -> one-piece quartic. Throws Error(kUnsupported) when more than one
// inserted control point would be needed.
TopologyPlan PlanFromCounts(TangentCase tangent_case, int left_inflections,
                            int right_inflections, int degree_request);

// Full planner: measures inflections of both input curves (2D only) over an
// arc of length `gap` next to the gap, then decides.
TopologyPlan Plan(const Scene& scene, const NormalizedScene& normalized,
                  int degree_request, double gap);

}  // namespace occluded

#endif  // OCCLUDED_PLANNER_HPP_
