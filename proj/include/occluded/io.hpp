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

// Scene and solution files (JSON), CSV polylines and SVG plots.

#ifndef OCCLUDED_IO_HPP_
#define OCCLUDED_IO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "occluded/euler_lagrange.hpp"
#include "occluded/planner.hpp"
#include "occluded/rigid_motion.hpp"
#include "occluded/spline.hpp"

namespace occluded {

inline constexpr int kFileVersion = 1;

struct CurveSpec {
  int degree = 3;
  std::vector<double> knots;
  std::vector<Point> points;

  friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

struct SceneFile {
  int version = kFileVersion;
  int dim = 2;
  CurveSpec left;
  CurveSpec right;
  std::optional<Topology> solution;
  std::string lagrangian;

  friend bool operator==(const SceneFile&, const SceneFile&) = default;
};

// Where the solution topology came from and what the planner decided.
struct PlanEcho {
  std::string source;  // "planner", "scene", "options" or "default"
  Topology topology;
  std::optional<TangentCase> tangent_case;  // 2D only
  std::vector<CoordinateTie> ties;
  std::optional<TopologyPlan> planned;  // present when source == "planner"
};

struct SolutionFile {
  int version = kFileVersion;
  int dim = 2;
  Topology topology;
  std::vector<double> knots;
  std::string lagrangian;
  BoundaryForm form = BoundaryForm::kTangentLine;
  bool orientation_valid = true;
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> unknowns;
  double residual_norm = 0.0;
  int iterations = 0;
  int start_used = 0;
  std::vector<Point> normalized_points;
  std::vector<Point> original_points;
  PlanEcho plan;
  RigidTransform transform = RigidTransform::Identity(2);  // original -> normalized
};

// Parse errors throw Error(kParse); semantic errors (bad knots, ...) keep the
// code of the module that detects them.
SceneFile ParseSceneFile(std::string_view json_text);
std::string WriteSceneFile(const SceneFile& scene);

// A scene file in normalized position plus the transform that produced it.
std::string WriteNormalizedSceneFile(const SceneFile& normalized,
                                     const RigidTransform& transform);
std::string WritePlanFile(const PlanEcho& plan);

SolutionFile ParseSolutionFile(std::string_view json_text);
std::string WriteSolutionFile(const SolutionFile& solution);

// A bare curve {"degree", "knots", "points"}, or the solution curve (in
// original coordinates) of a solution file.
CurveSpec ParseCurveFile(std::string_view json_text);

BSplineCurve ToCurve(const CurveSpec& spec);
CurveSpec FromCurve(const BSplineCurve& curve);
Scene ToScene(const SceneFile& file);

// Rows "t,x,y[,z]" at uniform parameters, 17 significant digits.
std::string WriteCsv(const BSplineCurve& curve, int count);

// Input curves in black, the solution (if any) in red, control polygons
// dashed gray. 3D scenes are drawn as xy and xz projections side by side.
std::string RenderSvg(const Scene& scene,
                      const std::optional<BSplineCurve>& solution);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view text);

}  // namespace occluded

#endif  // OCCLUDED_IO_HPP_
