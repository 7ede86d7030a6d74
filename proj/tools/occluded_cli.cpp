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


// Command-line front end. Talks to the library only through occluded.h.
//
// Exit codes: 0 success, 1..9 the occ_status of the failing call
// (2 parse, 4 balance, 5 convergence, 6 orientation, ...), 64 usage.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "occluded/occluded.h"

namespace {

constexpr int kUsageExit = 64;

struct SceneDeleter {
  void operator()(occ_scene* s) const { occ_scene_free(s); }
};
struct SolutionDeleter {
  void operator()(occ_solution* s) const { occ_solution_free(s); }
};
struct StringDeleter {
  void operator()(char* s) const { occ_string_free(s); }
};
using ScenePtr = std::unique_ptr<occ_scene, SceneDeleter>;
using SolutionPtr = std::unique_ptr<occ_solution, SolutionDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

struct Failure {
  occ_status status;
};

void Check(occ_status st) {
  if (st == OCC_OK) return;
  std::cerr << "error (" << occ_status_name(st) << "): " << occ_last_error()
            << "\n";
  throw Failure{st};
}

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error (io): cannot open " << path << "\n";
    throw Failure{OCC_ERR_IO};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void Emit(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error (io): cannot write " << path << "\n";
    throw Failure{OCC_ERR_IO};
  }
}

ScenePtr LoadScene(const std::string& path) {
  occ_scene* raw = nullptr;
  Check(occ_scene_from_json(ReadAll(path).c_str(), &raw));
  return ScenePtr(raw);
}

struct SolveFlags {
  std::string lagrangian;
  int degree = 0;
  int pieces = 0;
  double tol = 0.0;
  int max_iters = 0;
  bool literal = false;
  std::optional<std::uint64_t> seed;
  int degree_request = 3;
};

occ_solve_options ToOptions(const SolveFlags& f) {
  occ_solve_options o;
  occ_solve_options_init(&o);
  o.degree = f.degree;
  o.pieces = f.pieces;
  if (!f.lagrangian.empty()) o.lagrangian = f.lagrangian.c_str();
  if (f.tol > 0.0) o.tol = f.tol;
  if (f.max_iters > 0) o.max_iters = f.max_iters;
  o.form = f.literal ? OCC_BOUNDARY_LITERAL : OCC_BOUNDARY_TANGENT_LINE;
  o.degree_request = f.degree_request;
  if (f.seed) {
    o.use_seed = 1;
    o.seed = *f.seed;
  }
  return o;
}

void AddSolveFlags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--lagrangian", f.lagrangian,
                  "Lagrangian expression, overrides the scene's");
  cmd->add_option("--degree", f.degree, "Solution degree (skips the planner)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--pieces", f.pieces,
                  "Solution piece count (skips the planner)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--degree-request", f.degree_request,
                  "Five-point realization picked by the planner: 3 "
                  "(two-piece cubic) or 4 (one-piece quartic)")
      ->check(CLI::IsMember({3, 4}));
  cmd->add_option("--tol", f.tol, "Residual max-norm tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-iters", f.max_iters, "Newton iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--compat-eq7-literal", f.literal,
                "Right boundary as p(N-1) = beta (p(N) - p(N+1))");
  cmd->add_option("--seed", f.seed, "Append seeded random starts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Occluded curve completion with discrete variational B-splines"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(occ_version()));

  std::string input;
  std::string output;
  std::string svg;
  std::string solution_path;
  int count = 100;
  SolveFlags flags;

  CLI::App* solve = app.add_subcommand("solve", "Complete the occluded curve");
  solve->add_option("scene", input, "Scene file")->required();
  solve->add_option("-o,--output", output, "Solution file (default stdout)");
  solve->add_option("--svg", svg, "Also render the result to this SVG file");
  AddSolveFlags(solve, flags);

  CLI::App* eval = app.add_subcommand("eval", "Sample a curve to CSV");
  eval->add_option("curve", input, "Curve or solution file")->required();
  eval->add_option("-n,--count", count, "Number of samples")
      ->check(CLI::Range(2, 1000000));
  eval->add_option("-o,--output", output, "CSV file (default stdout)");

  CLI::App* render = app.add_subcommand("render", "Draw a scene as SVG");
  render->add_option("scene", input, "Scene file")->required();
  render->add_option("--solution", solution_path, "Solution file to overlay");
  render->add_option("-o,--output,--svg", output, "SVG file (default stdout)");

  CLI::App* normalize =
      app.add_subcommand("normalize", "Move a scene to normalized position");
  normalize->add_option("scene", input, "Scene file")->required();
  normalize->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App* plan = app.add_subcommand("plan", "Show the topology decision");
  plan->add_option("scene", input, "Scene file")->required();
  plan->add_option("-o,--output", output, "Output file (default stdout)");
  AddSolveFlags(plan, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageExit;
  }

  try {
    if (*solve) {
      ScenePtr scene = LoadScene(input);
      const occ_solve_options options = ToOptions(flags);
      occ_solution* raw = nullptr;
      const occ_status st = occ_solve(scene.get(), &options, &raw);
      SolutionPtr solution(raw);
      const std::string message = occ_last_error();
      if (solution) {
        char* text = nullptr;
        Check(occ_solution_to_json(solution.get(), &text));
        Emit(output, StringPtr(text).get());
        if (!svg.empty()) {
          char* drawing = nullptr;
          Check(occ_render_svg(scene.get(), solution.get(), &drawing));
          Emit(svg, StringPtr(drawing).get());
        }
      }
      if (st != OCC_OK) {
        std::cerr << "error (" << occ_status_name(st) << "): " << message
                  << "\n";
        return st;
      }
    } else if (*eval) {
      char* csv = nullptr;
      Check(occ_eval_csv(ReadAll(input).c_str(), count, &csv));
      Emit(output, StringPtr(csv).get());
    } else if (*render) {
      ScenePtr scene = LoadScene(input);
      SolutionPtr solution;
      if (!solution_path.empty()) {
        occ_solution* raw = nullptr;
        Check(occ_solution_from_json(ReadAll(solution_path).c_str(), &raw));
        solution.reset(raw);
      }
      char* drawing = nullptr;
      Check(occ_render_svg(scene.get(), solution.get(), &drawing));
      Emit(output, StringPtr(drawing).get());
    } else if (*normalize) {
      ScenePtr scene = LoadScene(input);
      char* text = nullptr;
      Check(occ_normalize_json(scene.get(), &text));
      Emit(output, StringPtr(text).get());
    } else if (*plan) {
      ScenePtr scene = LoadScene(input);
      const occ_solve_options options = ToOptions(flags);
      char* text = nullptr;
      Check(occ_plan_json(scene.get(), &options, &text));
      Emit(output, StringPtr(text).get());
    }
  } catch (const Failure& f) {
    return f.status;
  }
  return 0;
}
