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


// End-to-end completion: normalize, plan, solve, map back.

#ifndef OCCLUDED_PIPELINE_HPP_
#define OCCLUDED_PIPELINE_HPP_

#include <optional>
#include <string>
#include <utility>

#include "occluded/io.hpp"
#include "occluded/solver.hpp"

namespace occluded {

struct SolveOptions {
  std::optional<Topology> topology;      // overrides the scene and planner
  std::optional<std::string> lagrangian;  // overrides the scene
  SolverConfig solver;
  BoundaryForm form = BoundaryForm::kTangentLine;
  int degree_request = 3;  // five-point realization picked by the planner
};

// Topology resolution order: options, scene file, planner (2D), one-piece
// cubic (3D).
PlanEcho PlanScene(const SceneFile& scene, const SolveOptions& options = {});

// With accept_invalid_orientation, a converged root with alpha <= 0 or
// beta <= 0 is returned with orientation_valid = false instead of throwing.
SolutionFile SolveScene(const SceneFile& scene,
                        const SolveOptions& options = {},
                        bool accept_invalid_orientation = false);

// The scene moved to normalized position, and the transform used.
std::pair<SceneFile, RigidTransform> NormalizeSceneFile(const SceneFile& scene);

}  // namespace occluded

#endif  // OCCLUDED_PIPELINE_HPP_
