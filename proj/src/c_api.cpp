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


#include "occluded/occluded.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "occluded/error.hpp"
#include "occluded/io.hpp"
#include "occluded/pipeline.hpp"

struct occ_scene {
  occluded::SceneFile file;
  occluded::Scene scene;
};

struct occ_solution {
  occluded::SolutionFile file;
};

namespace {

thread_local std::string g_last_error;

occ_status ToStatus(occluded::ErrorCode code) {
  return static_cast<occ_status>(static_cast<int>(code));
}

occ_status SetError(occ_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs f, mapping exceptions to status codes and the thread's last error.
template <typename F>
occ_status Guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const occluded::Error& e) {
    return SetError(ToStatus(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(OCC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(OCC_ERR_INTERNAL, e.what());
  } catch (...) {
    return SetError(OCC_ERR_INTERNAL, "unknown exception");
  }
}

char* Duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

occ_status NullArgument(const char* name) {
  return SetError(OCC_ERR_INVALID_ARGUMENT,
                  std::string("c_api: ") + name + " must not be NULL");
}

occluded::SolveOptions ToOptions(const occ_solve_options* o) {
  occ_solve_options defaults;
  occ_solve_options_init(&defaults);
  if (o == nullptr) o = &defaults;
  occluded::SolveOptions options;
  if (o->degree != 0 || o->pieces != 0) {
    options.topology = occluded::Topology{o->degree != 0 ? o->degree : 3,
                                          o->pieces != 0 ? o->pieces : 1};
  }
  if (o->lagrangian != nullptr) options.lagrangian = o->lagrangian;
  options.solver.tol = o->tol;
  options.solver.max_iters = o->max_iters;
  if (o->use_seed) options.solver.seed = o->seed;
  options.form = o->form == OCC_BOUNDARY_LITERAL
                     ? occluded::BoundaryForm::kLiteral
                     : occluded::BoundaryForm::kTangentLine;
  options.degree_request = o->degree_request;
  return options;
}

}  // namespace

extern "C" {

const char* occ_version(void) { return "1.0.0"; }

const char* occ_status_name(occ_status status) {
  switch (status) {
    case OCC_OK: return "ok";
    case OCC_ERR_INTERNAL: return "internal";
    default: break;
  }
  if (status >= OCC_ERR_INVALID_ARGUMENT && status <= OCC_ERR_IO) {
    return occluded::ErrorCodeName(static_cast<occluded::ErrorCode>(status))
        .data();
  }
  return "unknown";
}

const char* occ_last_error(void) { return g_last_error.c_str(); }

void occ_string_free(char* s) { std::free(s); }

occ_status occ_scene_from_json(const char* json, occ_scene** out) {
  if (json == nullptr) return NullArgument("json");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    occluded::SceneFile file = occluded::ParseSceneFile(json);
    occluded::Scene scene = occluded::ToScene(file);
    *out = new occ_scene{std::move(file), std::move(scene)};
    return OCC_OK;
  });
}

occ_status occ_scene_from_file(const char* path, occ_scene** out) {
  if (path == nullptr) return NullArgument("path");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  std::string text;
  const occ_status st = Guard([&] {
    text = occluded::ReadTextFile(path);
    return OCC_OK;
  });
  if (st != OCC_OK) return st;
  return occ_scene_from_json(text.c_str(), out);
}

void occ_scene_free(occ_scene* scene) { delete scene; }

int occ_scene_dim(const occ_scene* scene) {
  return scene == nullptr ? 0 : scene->scene.dim();
}

void occ_solve_options_init(occ_solve_options* options) {
  if (options == nullptr) return;
  const occluded::SolveOptions defaults;
  options->degree = 0;
  options->pieces = 0;
  options->lagrangian = nullptr;
  options->tol = defaults.solver.tol;
  options->max_iters = defaults.solver.max_iters;
  options->form = OCC_BOUNDARY_TANGENT_LINE;
  options->degree_request = defaults.degree_request;
  options->use_seed = 0;
  options->seed = 0;
}

occ_status occ_solve(const occ_scene* scene, const occ_solve_options* options,
                     occ_solution** out) {
  if (scene == nullptr) return NullArgument("scene");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    occluded::SolutionFile file =
        occluded::SolveScene(scene->file, ToOptions(options), true);
    const bool valid = file.orientation_valid;
    *out = new occ_solution{std::move(file)};
    if (!valid) {
      return SetError(OCC_ERR_ORIENTATION,
                      "solver: every converged root has alpha <= 0 or "
                      "beta <= 0");
    }
    return OCC_OK;
  });
}

occ_status occ_solution_to_json(const occ_solution* solution, char** out) {
  if (solution == nullptr) return NullArgument("solution");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = Duplicate(occluded::WriteSolutionFile(solution->file));
    return OCC_OK;
  });
}

occ_status occ_solution_from_json(const char* json, occ_solution** out) {
  if (json == nullptr) return NullArgument("json");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = new occ_solution{occluded::ParseSolutionFile(json)};
    return OCC_OK;
  });
}

void occ_solution_free(occ_solution* solution) { delete solution; }

occ_status occ_solution_alpha_beta(const occ_solution* solution, double* alpha,
                                   double* beta) {
  if (solution == nullptr) return NullArgument("solution");
  if (alpha != nullptr) *alpha = solution->file.alpha;
  if (beta != nullptr) *beta = solution->file.beta;
  return OCC_OK;
}

size_t occ_solution_point_count(const occ_solution* solution) {
  return solution == nullptr ? 0 : solution->file.original_points.size();
}

int occ_solution_dim(const occ_solution* solution) {
  return solution == nullptr ? 0 : solution->file.dim;
}

occ_status occ_solution_point(const occ_solution* solution, size_t index,
                              double* xyz) {
  if (solution == nullptr) return NullArgument("solution");
  if (xyz == nullptr) return NullArgument("xyz");
  const auto& pts = solution->file.original_points;
  if (index >= pts.size()) {
    return SetError(OCC_ERR_INVALID_ARGUMENT,
                    "c_api: point index " + std::to_string(index) +
                        " out of range");
  }
  for (Eigen::Index c = 0; c < pts[index].size(); ++c) xyz[c] = pts[index][c];
  return OCC_OK;
}

int occ_solution_orientation_valid(const occ_solution* solution) {
  return solution != nullptr && solution->file.orientation_valid ? 1 : 0;
}

occ_status occ_render_svg(const occ_scene* scene, const occ_solution* solution,
                          char** out) {
  if (scene == nullptr) return NullArgument("scene");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    std::optional<occluded::BSplineCurve> curve;
    if (solution != nullptr) {
      if (solution->file.dim != scene->scene.dim()) {
        return SetError(OCC_ERR_INVALID_ARGUMENT,
                        "c_api: solution and scene dimensions differ");
      }
      curve = occluded::BSplineCurve(
          occluded::KnotVector(solution->file.knots,
                               solution->file.topology.degree),
          solution->file.original_points);
    }
    *out = Duplicate(occluded::RenderSvg(scene->scene, curve));
    return OCC_OK;
  });
}

occ_status occ_eval_csv(const char* curve_json, int count, char** out) {
  if (curve_json == nullptr) return NullArgument("curve_json");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    const occluded::BSplineCurve curve =
        occluded::ToCurve(occluded::ParseCurveFile(curve_json));
    *out = Duplicate(occluded::WriteCsv(curve, count));
    return OCC_OK;
  });
}

occ_status occ_normalize_json(const occ_scene* scene, char** out) {
  if (scene == nullptr) return NullArgument("scene");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    const auto [normalized, transform] =
        occluded::NormalizeSceneFile(scene->file);
    *out = Duplicate(occluded::WriteNormalizedSceneFile(normalized, transform));
    return OCC_OK;
  });
}

occ_status occ_plan_json(const occ_scene* scene,
                         const occ_solve_options* options, char** out) {
  if (scene == nullptr) return NullArgument("scene");
  if (out == nullptr) return NullArgument("out");
  *out = nullptr;
  return Guard([&] {
    *out = Duplicate(occluded::WritePlanFile(
        occluded::PlanScene(scene->file, ToOptions(options))));
    return OCC_OK;
  });
}

}  // extern "C"
