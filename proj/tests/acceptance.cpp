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


// Acceptance suite. `occluded_acceptance [N ...]` runs the selected criteria
// (all by default) and prints one PASS/FAIL line per criterion. The exit
// status is 0 only if every selected criterion passed.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "occluded/error.hpp"
#include "occluded/euler_lagrange.hpp"
#include "occluded/io.hpp"
#include "occluded/lagrangian.hpp"
#include "occluded/pipeline.hpp"
#include "occluded/planner.hpp"
#include "occluded/solver.hpp"
#include "occluded/spline.hpp"
#include "test_util.hpp"

namespace occluded {
namespace {

using testing::Gen;
using testing::LoadScene;

constexpr const char* kExample1 = "dot(D2(1), D2(2))";
constexpr const char* kExample2 = "dot(D1(1), D1(3))";
constexpr const char* kExample3 = "trip(D2(1), D2(2), D2(3)) + dot(D3(1), D3(2))";

struct Result {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

double MaxCurvature(const BSplineCurve& curve, int samples = 2001) {
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double k = SignedCurvature(curve, static_cast<double>(s) / (samples - 1));
    if (!std::isfinite(k)) return INFINITY;
    worst = std::max(worst, std::abs(k));
  }
  return worst;
}

BSplineCurve SolutionCurve(const SolutionFile& sol) {
  return BSplineCurve(KnotVector(sol.knots, sol.topology.degree),
                      sol.original_points);
}

Result Basis() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<KnotVector> vectors = {
      KnotVector({0, 0, 0, 0, 1, 1, 1, 1}, 3),
      KnotVector({0, 0, 0, 0, 0.5, 1, 1, 1, 1}, 3),
      KnotVector({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 4),
      KnotVector({0, 0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1, 1}, 3)};
  Gen gen(1);
  double worst = 0.0;
  for (const KnotVector& kv : vectors) {
    for (int s = 0; s < 1000; ++s) {
      const double t = gen.Uniform(0.0, 1.0);
      double sum = 0.0;
      for (int i = 0; i < kv.point_count(); ++i) sum += occluded::Basis(i, kv.degree(), t, kv);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    for (double t : {0.0, 1.0}) {
      double sum = 0.0;
      for (int i = 0; i < kv.point_count(); ++i) sum += occluded::Basis(i, kv.degree(), t, kv);
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    for (int s = 0; s < 1000; ++s) {
      const BSplineCurve c(kv, gen.Points(kv.point_count(), s % 2 ? 3 : 2, 10.0));
      worst = std::max(worst, (c.Evaluate(0.0) - c.front()).cwiseAbs().maxCoeff());
      worst = std::max(worst, (c.Evaluate(1.0) - c.back()).cwiseAbs().maxCoeff());
    }
  }
  const double secs = Seconds(start);
  return {worst < 1e-12 && secs < 1.0,
          "max error " + Fmt("%.3g", worst) + ", " + Fmt("%.3f", secs) + " s"};
}

Result SummationByParts() {
  Gen gen(2);
  const int free[] = {1, 2, 3, 4, 5};
  double worst = 0.0;
  int cases = 0;
  for (int dim : {2, 3}) {
    for (const char* text : {kExample1, kExample2, kExample3}) {
      if (dim == 2 && text == kExample3) continue;  // triple product is 3D
      const LagrangianExpr e = ParseLagrangian(text);
      for (int s = 0; s < 100; ++s) {
        const DifferenceTable t(gen.Points(10, dim, 3.0), -2, 3);
        const Eigen::VectorXd a = ElOperatorForm(e, t, free);
        const Eigen::VectorXd b = GradLagrangian(e, t, free);
        worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
        ++cases;
      }
    }
  }
  return {worst < 1e-9,
          std::to_string(cases) + " point sets, max abs diff " + Fmt("%.3g", worst)};
}

Result GradientCheck() {
  Gen gen(3);
  const int free[] = {1, 2, 3, 4, 5};
  double worst = 0.0;
  int cases = 0;
  for (const char* text : {kExample1, kExample2, kExample3}) {
    const LagrangianExpr e = ParseLagrangian(text);
    const int dim = text == kExample3 ? 3 : 2;
    for (int s = 0; s < 100; ++s) {
      const auto pts = gen.Points(8, dim, 2.0);
      const Eigen::VectorXd g = GradLagrangian(e, DifferenceTable(pts, -1, 3), free);
      Eigen::VectorXd x(5 * dim);
      for (int k = 0; k < 5; ++k) x.segment(k * dim, dim) = pts[k + 2];
      auto total = [&](const Eigen::VectorXd& v) {
        auto moved = pts;
        for (int k = 0; k < 5; ++k) moved[k + 2] = v.segment(k * dim, dim);
        return EvaluateLagrangian(e, DifferenceTable(moved, -1, 3));
      };
      const Eigen::VectorXd fd = testing::FdGradient(total, x, 1e-6);
      const double scale = std::max(g.cwiseAbs().maxCoeff(), 1.0);
      worst = std::max(worst, (g - fd).cwiseAbs().maxCoeff() / scale);
      ++cases;
    }
  }
  return {worst < 1e-6,
          std::to_string(cases) + " instances, max relative error " + Fmt("%.3g", worst)};
}

Result Equivariance() {
  Gen gen(4);
  double worst = 0.0;
  int motions = 0;
  for (const char* name : {"example1", "example3"}) {
    const SceneFile scene = LoadScene(name);
    const SolutionFile base = SolveScene(scene);
    for (int s = 0; s < 50; ++s) {
      const RigidTransform g = gen.Motion(scene.dim);
      const SolutionFile moved = SolveScene(testing::Transformed(scene, g));
      std::vector<Point> expected;
      for (const Point& p : base.original_points) expected.push_back(g.Apply(p));
      worst = std::max(worst, testing::MaxDeviation(moved.original_points, expected));
      ++motions;
    }
  }
  return {worst < 1e-6,
          std::to_string(motions) + " motions, max deviation " + Fmt("%.3g", worst)};
}

Result ExampleOne() {
  const SceneFile scene = LoadScene("example1");
  const auto start = std::chrono::steady_clock::now();
  const SolutionFile sol = SolveScene(scene);
  const double secs = Seconds(start);
  const int changes = testing::CurvatureSignChanges(SolutionCurve(sol));
  const bool pass = sol.residual_norm < 1e-10 && sol.alpha > 0.0 &&
                    sol.beta > 0.0 && changes == 1 && secs < 1.0;
  return {pass, "residual " + Fmt("%.3g", sol.residual_norm) + ", alpha " +
                    Fmt("%.6g", sol.alpha) + ", beta " + Fmt("%.6g", sol.beta) +
                    ", curvature sign changes " + std::to_string(changes) + ", " +
                    Fmt("%.3f", secs) + " s"};
}

Result ExampleTwo() {
  const double reference = MaxCurvature(SolutionCurve(SolveScene(LoadScene("example1"))));
  try {
    const SolutionFile sol = SolveScene(LoadScene("example2"));
    const double k = MaxCurvature(SolutionCurve(sol));
    return {k > reference, "max curvature " + Fmt("%.6g", k) + " vs example1 " +
                               Fmt("%.6g", reference)};
  } catch (const SolveError& e) {
    std::string detail = std::string("no valid root: ") + e.what();
    if (e.root()) {
      detail += "; only root alpha " + Fmt("%.3g", e.root()->alpha()) + ", beta " +
                Fmt("%.3g", e.root()->beta());
    }
    return {false, detail + "; example1 max curvature " + Fmt("%.6g", reference)};
  }
}

Result Straight() {
  const SolutionFile sol = SolveScene(LoadScene("straight"));
  const Eigen::Vector2d origin(1.0, 2.0);
  const Eigen::Vector2d dir(0.6, 0.8);
  double worst = 0.0;
  for (const Point& p : sol.original_points) {
    const Eigen::Vector2d v = p - origin;
    worst = std::max(worst, std::abs(dir[0] * v[1] - dir[1] * v[0]));
  }
  return {worst < 1e-8, "max perpendicular deviation " + Fmt("%.3g", worst)};
}

Result Constraints() {
  bool pass = true;
  std::ostringstream detail;
  for (const char* name : {"mul_0_1", "mul_1_1"}) {
    const SceneFile scene = LoadScene(name);
    for (const Topology topo : {Topology{3, 2}, Topology{4, 1}}) {
      SolveOptions options;
      options.topology = topo;
      if (detail.tellp() > 0) detail << "; ";
      detail << name << " {" << topo.degree << "," << topo.pieces << "}";
      SolutionFile sol;
      try {
        sol = SolveScene(scene, options, true);
      } catch (const Error& e) {
        pass = false;
        detail << " failed: " << e.what();
        continue;
      }
      if (!sol.plan.tangent_case || sol.plan.ties.size() != 1) {
        pass = false;
        detail << " no tie";
        continue;
      }
      const auto& p = sol.normalized_points;
      bool exact;
      if (*sol.plan.tangent_case == TangentCase::kCase1) {
        exact = p[2][0] == 0.5 * p[1][0] + 0.5 * p[3][0];
      } else {
        exact = p[2][1] == -0.5 * p[1][1] + -0.5 * p[3][1];
      }
      const bool ok = exact && sol.residual_norm < 1e-8;
      pass = pass && ok;
      detail << " " << ToString(*sol.plan.tangent_case)
             << (exact ? " tie exact" : " tie VIOLATED") << ", residual "
             << Fmt("%.3g", sol.residual_norm) << ", orientation "
             << (sol.orientation_valid ? "valid" : "invalid") << " (alpha "
             << Fmt("%.4g", sol.alpha) << ", beta " << Fmt("%.4g", sol.beta) << ")";
    }
  }
  return {pass, detail.str()};
}

Result Planner() {
  bool pass = TargetInflections(2, 0) == 1 && TargetInflections(0, 0) == 0 &&
              TargetInflections(3, 2) == 2;
  std::string detail = pass ? "target table ok" : "target table wrong";
  Gen gen(9);
  int straight_nonzero = 0;
  for (int s = 0; s < 20; ++s) {
    const Point a = gen.Vec(2, 5.0);
    const Point d = gen.Vec(2, 1.0).normalized();
    std::vector<Point> pts;
    double u = 0.0;
    for (int k = 0; k < 4 + s % 3; ++k) {
      pts.push_back(a + u * d);
      u += gen.Uniform(0.1, 2.0);
    }
    const BSplineCurve line(KnotVector::Uniform(3, static_cast<int>(pts.size()) - 3), pts);
    for (CurveEnd end : {CurveEnd::kLeading, CurveEnd::kTrailing}) {
      if (CountInflections(line, gen.Uniform(0.5, 20.0), end).count != 0) ++straight_nonzero;
    }
  }
  int variant = 0;
  int total_inflections = 0;
  for (int s = 0; s < 20; ++s) {
    const int n = gen.Int(4, 8);
    const BSplineCurve curve(KnotVector::Uniform(3, n - 3), gen.Points(n, 2, 3.0));
    const RigidTransform g = gen.Motion(2);
    std::vector<Point> moved;
    for (const Point& p : curve.points()) moved.push_back(g.Apply(p));
    const BSplineCurve image(curve.knots(), moved);
    for (CurveEnd end : {CurveEnd::kLeading, CurveEnd::kTrailing}) {
      const double window = gen.Uniform(0.5, 10.0);
      const int a = CountInflections(curve, window, end).count;
      total_inflections += a;
      if (a != CountInflections(image, window, end).count) ++variant;
    }
  }
  pass = pass && straight_nonzero == 0 && variant == 0;
  detail += ", straight lines with inflections " + std::to_string(straight_nonzero) +
            ", SE(2) mismatches " + std::to_string(variant) + " of 40 (" +
            std::to_string(total_inflections) + " inflections counted)";
  return {pass, detail};
}

struct Run {
  int exit_code;
  std::string out;
};

Run Cli(const std::string& args) {
  const std::string cmd = std::string(OCC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Result Determinism() {
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"example1", ""},           {"example2", ""},
      {"example3", ""},           {"example4", ""},
      {"straight", ""},           {"mul_0_1", "--pieces 2"},
      {"mul_0_1", "--degree 4"},  {"mul_1_1", "--pieces 2"},
      {"mul_1_1", "--degree 4"}};
  bool pass = true;
  std::ostringstream detail;
  for (const auto& [name, flags] : runs) {
    const std::string args = "solve " + testing::ScenePath(name) + " " + flags;
    const Run a = Cli(args);
    const Run b = Cli(args);
    const bool same = !a.out.empty() && a.out == b.out && a.exit_code == b.exit_code;
    pass = pass && same;
    if (detail.tellp() > 0) detail << ", ";
    detail << name << (flags.empty() ? "" : " " + flags) << " exit "
           << a.exit_code << (same ? " identical" : " DIFFERENT");
  }
  return {pass, detail.str()};
}

const std::map<int, std::pair<const char*, std::function<Result()>>>& Criteria() {
  static const std::map<int, std::pair<const char*, std::function<Result()>>> c = {
      {1, {"basis correctness", Basis}},
      {2, {"summation by parts", SummationByParts}},
      {3, {"gradient check", GradientCheck}},
      {4, {"equivariance", Equivariance}},
      {5, {"example 1 reproduction", ExampleOne}},
      {6, {"example 2 contrast", ExampleTwo}},
      {7, {"straight line", Straight}},
      {8, {"constraint mechanics", Constraints}},
      {9, {"planner arithmetic", Planner}},
      {10, {"determinism", Determinism}}};
  return c;
}

}  // namespace
}  // namespace occluded

int main(int argc, char** argv) {
  using occluded::Criteria;
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (Criteria().count(n) == 0) {
      std::fprintf(stderr, "unknown criterion: %s\n", argv[i]);
      return 64;
    }
    selected.push_back(n);
  }
  if (selected.empty()) {
    for (const auto& entry : Criteria()) selected.push_back(entry.first);
  }
  bool all = true;
  for (int n : selected) {
    const auto& [name, run] = Criteria().at(n);
    occluded::Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    all = all && r.pass;
    std::printf("criterion %d: %s - %s (%s)\n", n, r.pass ? "PASS" : "FAIL", name,
                r.detail.c_str());
  }
  return all ? 0 : 1;
}
