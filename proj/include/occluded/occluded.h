/*
 * Copyright 2026 The occluded Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to the occluded curve completion library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Strings returned through char** are heap-allocated and released with
 * occ_string_free. Every call returns an occ_status; on failure
 * occ_last_error() describes the problem (per thread).
 */

#ifndef OCCLUDED_OCCLUDED_H_
#define OCCLUDED_OCCLUDED_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(OCC_BUILDING_LIBRARY)
#    define OCC_API __declspec(dllexport)
#  else
#    define OCC_API __declspec(dllimport)
#  endif
#else
#  define OCC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum occ_status {
  OCC_OK = 0,
  OCC_ERR_INVALID_ARGUMENT = 1,
  OCC_ERR_PARSE = 2,
  OCC_ERR_DEGENERATE_SCENE = 3,
  OCC_ERR_BALANCE = 4,
  OCC_ERR_CONVERGENCE = 5,
  OCC_ERR_ORIENTATION = 6,
  OCC_ERR_UNSUPPORTED = 7,
  OCC_ERR_IO = 8,
  OCC_ERR_INTERNAL = 9
} occ_status;

typedef struct occ_scene occ_scene;
typedef struct occ_solution occ_solution;

typedef enum occ_boundary_form {
  OCC_BOUNDARY_TANGENT_LINE = 0,
  OCC_BOUNDARY_LITERAL = 1
} occ_boundary_form;

typedef struct occ_solve_options {
  int degree;               /* 0: planner / scene decides */
  int pieces;               /* 0: planner / scene decides */
  const char* lagrangian;   /* NULL: use the scene's */
  double tol;
  int max_iters;
  occ_boundary_form form;
  int degree_request;       /* 3 or 4, five-point realization */
  int use_seed;
  uint64_t seed;
} occ_solve_options;

OCC_API const char* occ_version(void);
OCC_API const char* occ_status_name(occ_status status);
OCC_API const char* occ_last_error(void);
OCC_API void occ_string_free(char* s);

OCC_API occ_status occ_scene_from_json(const char* json, occ_scene** out);
OCC_API occ_status occ_scene_from_file(const char* path, occ_scene** out);
OCC_API void occ_scene_free(occ_scene* scene);
OCC_API int occ_scene_dim(const occ_scene* scene);

OCC_API void occ_solve_options_init(occ_solve_options* options);

/* On OCC_ERR_ORIENTATION *out still receives the rejected root, marked
 * orientation_valid = false; the caller owns it. */
OCC_API occ_status occ_solve(const occ_scene* scene,
                             const occ_solve_options* options,
                             occ_solution** out);

OCC_API occ_status occ_solution_to_json(const occ_solution* solution,
                                        char** out);
OCC_API occ_status occ_solution_from_json(const char* json,
                                          occ_solution** out);
OCC_API void occ_solution_free(occ_solution* solution);
OCC_API occ_status occ_solution_alpha_beta(const occ_solution* solution,
                                           double* alpha, double* beta);
OCC_API size_t occ_solution_point_count(const occ_solution* solution);
OCC_API int occ_solution_dim(const occ_solution* solution);
/* xyz receives dim values of original-coordinate point `index` (0-based). */
OCC_API occ_status occ_solution_point(const occ_solution* solution,
                                      size_t index, double* xyz);
OCC_API int occ_solution_orientation_valid(const occ_solution* solution);

/* solution may be NULL to draw the input curves only. */
OCC_API occ_status occ_render_svg(const occ_scene* scene,
                                  const occ_solution* solution, char** out);
/* Curve JSON: bare {degree, knots, points} or a solution file. */
OCC_API occ_status occ_eval_csv(const char* curve_json, int count, char** out);
OCC_API occ_status occ_normalize_json(const occ_scene* scene, char** out);
OCC_API occ_status occ_plan_json(const occ_scene* scene,
                                 const occ_solve_options* options, char** out);

#ifdef __cplusplus
}
#endif

#endif /* OCCLUDED_OCCLUDED_H_ */
