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


#include "occluded/pipeline.hpp"

#include "occluded/error.hpp"
#include "occluded/lagrangian.hpp"
#include "occluded/planner.hpp"

namespace occluded {
namespace {

std::string ResolveLagrangian(const SceneFile& scene,
                              const SolveOptions& options) {
  std::string text = options.lagrangian.value_or(scene.lagrangian);
  if (text.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "pipeline",
                "no Lagrangian given in the scene or on the command line");
  }
  return text;
}

PlanEcho ResolvePlan(const Scene& scene, const NormalizedScene& normalized,
                     const SolveOptions& options) {
  PlanEcho echo;
  if (scene.dim() == 2) echo.tangent_case = ClassifyCase(normalized);
  if (options.topology || scene.solution()) {
    echo.source = options.topology ? "options" : "scene";
    echo.topology = options.topology ? *options.topology : *scene.solution();
  } else if (scene.dim() == 2) {
    const TopologyPlan plan =
        Plan(scene, normalized, options.degree_request, normalized.gap());
    echo.source = "planner";
    echo.topology = plan.topology();
    echo.planned = plan;
  } else {
    echo.source = "default";
    echo.topology = Topology{3, 1};
  }
  if (echo.tangent_case) {
    echo.ties = TiesFor(*echo.tangent_case, echo.topology.point_count());
  }
  return echo;
}

}  // namespace

PlanEcho PlanScene(const SceneFile& file, const SolveOptions& options) {
  const Scene scene = ToScene(file);
  return ResolvePlan(scene, NormalizeScene(scene), options);
}

SolutionFile SolveScene(const SceneFile& file, const SolveOptions& options,
                        bool accept_invalid_orientation) {
  const Scene scene = ToScene(file);
  const NormalizedScene normalized = NormalizeScene(scene);
  const std::string text = ResolveLagrangian(file, options);
  const LagrangianExpr expr = ParseLagrangian(text);
  ValidateLagrangian(expr, scene.dim());

  SolutionFile out;
  out.dim = scene.dim();
  out.plan = ResolvePlan(scene, normalized, options);
  out.topology = out.plan.topology;
  out.knots = out.topology.knots().knots();
  out.lagrangian = ToString(expr);
  out.form = options.form;
  out.transform = normalized.transform;

  UnknownLayout layout =
      BuildLayout(normalized, out.topology, expr, out.plan.ties, options.form);
  const ResidualSystem system = AssembleSystem(normalized, expr, layout);
  const auto starts = MultistartGrid(normalized, system.layout(), options.solver);

  Solution solution;
  try {
    solution = Solve(system, starts, options.solver);
  } catch (const SolveError& e) {
    if (!accept_invalid_orientation || e.code() != ErrorCode::kOrientation ||
        !e.root()) {
      throw;
    }
    solution = *e.root();
    out.orientation_valid = false;
  }

  out.alpha = solution.alpha();
  out.beta = solution.beta();
  out.unknowns.assign(solution.unknowns.begin(), solution.unknowns.end());
  out.residual_norm = solution.residual_norm;
  out.iterations = solution.iterations;
  out.start_used = solution.start_used;
  out.normalized_points = solution.control_points;
  const RigidTransform back = normalized.transform.Inverse();
  for (const auto& p : out.normalized_points) {
    out.original_points.push_back(back.Apply(p));
  }
  return out;
}

std::pair<SceneFile, RigidTransform> NormalizeSceneFile(
    const SceneFile& file) {
  const NormalizedScene normalized = NormalizeScene(ToScene(file));
  SceneFile out = file;
  out.left.points = normalized.left;
  out.right.points = normalized.right;
  return {std::move(out), normalized.transform};
}

}  // namespace occluded
