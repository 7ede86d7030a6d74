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


#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "occluded/error.hpp"
#include "occluded/planner.hpp"
#include "test_util.hpp"

namespace occluded {
namespace {

using testing::Gen;
using testing::LoadScene;
using testing::P2;

BSplineCurve Curve(std::vector<Point> pts) {
  const int n = static_cast<int>(pts.size());
  return BSplineCurve(KnotVector::Uniform(3, n - 3), std::move(pts));
}

TEST(TargetTest, FloorOfMean) {
  EXPECT_EQ(TargetInflections(2, 0), 1);
  EXPECT_EQ(TargetInflections(0, 0), 0);
  EXPECT_EQ(TargetInflections(3, 2), 2);
  EXPECT_EQ(TargetInflections(1, 0), 0);
}

TEST(PlanFromCountsTest, Table) {
  const TopologyPlan base = PlanFromCounts(TangentCase::kCase1, 0, 0, 3);
  EXPECT_EQ(base.realization, Realization::kOnePieceCubic);
  EXPECT_TRUE(base.ties.empty());
  EXPECT_EQ(base.topology(), (Topology{3, 1}));

  const TopologyPlan one = PlanFromCounts(TangentCase::kCase1, 2, 0, 3);
  EXPECT_EQ(one.target_inflections, 1);
  EXPECT_EQ(one.realization, Realization::kOnePieceCubic);

  const TopologyPlan two = PlanFromCounts(TangentCase::kCase2, 3, 2, 3);
  EXPECT_EQ(two.target_inflections, 2);
  EXPECT_EQ(two.realization, Realization::kTwoPieceCubic);
  EXPECT_EQ(two.topology().knots().knots(),
            (std::vector<double>{0, 0, 0, 0, 0.5, 1, 1, 1, 1}));
  ASSERT_EQ(two.ties.size(), 1u);
  EXPECT_EQ(two.ties[0], (CoordinateTie{3, 1, -0.5, -0.5}));

  const TopologyPlan quartic = PlanFromCounts(TangentCase::kCase2, 3, 2, 4);
  EXPECT_EQ(quartic.realization, Realization::kOnePieceQuartic);
  EXPECT_EQ(quartic.topology().knots().knots(),
            (std::vector<double>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}));

  const TopologyPlan case1 = PlanFromCounts(TangentCase::kCase1, 3, 2, 3);
  ASSERT_EQ(case1.ties.size(), 1u);
  EXPECT_EQ(case1.ties[0], (CoordinateTie{3, 0, 0.5, 0.5}));

  EXPECT_EQ(PlanFromCounts(TangentCase::kBaseline, 5, 3, 3).realization,
            Realization::kOnePieceCubic);
}

TEST(PlanFromCountsTest, Errors) {
  auto code = [](auto f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  EXPECT_EQ(code([] { PlanFromCounts(TangentCase::kCase2, 8, 0, 3); }),
            ErrorCode::kUnsupported);
  EXPECT_EQ(code([] { PlanFromCounts(TangentCase::kCase2, 1, 1, 5); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code([] { PlanFromCounts(TangentCase::kCase2, -1, 1, 3); }),
            ErrorCode::kInvalidArgument);
}

TEST(ClassifyTest, Examples) {
  EXPECT_EQ(ClassifyCase(P2(1, 2), P2(1, 3)), TangentCase::kCase1);
  EXPECT_EQ(ClassifyCase(P2(1, 2), P2(1, -3)), TangentCase::kCase2);
  EXPECT_EQ(ClassifyCase(P2(1, 0), P2(1, 0)), TangentCase::kBaseline);
  EXPECT_EQ(ClassifyCase(P2(1, 0), P2(1, -3)), TangentCase::kCase1);
}

TEST(ClassifyTest, BundledScenes) {
  auto classify = [](const char* name) {
    return ClassifyCase(NormalizeScene(ToScene(LoadScene(name))));
  };
  EXPECT_EQ(classify("mul_0_1"), TangentCase::kCase1);
  EXPECT_EQ(classify("mul_1_1"), TangentCase::kCase2);
  EXPECT_EQ(classify("straight"), TangentCase::kBaseline);
  EXPECT_THROW(classify("example3"), Error);
}

TEST(CurvatureTest, SignFollowsTurnDirection) {
  const BSplineCurve left_turn = Curve({P2(0, 0), P2(1, 0), P2(2, 1), P2(2, 2)});
  EXPECT_GT(SignedCurvature(left_turn, 0.5), 0.0);
  const BSplineCurve right_turn =
      Curve({P2(0, 0), P2(1, 0), P2(2, -1), P2(2, -2)});
  EXPECT_LT(SignedCurvature(right_turn, 0.5), 0.0);
  const BSplineCurve stall = Curve({P2(0, 0), P2(0, 0), P2(0, 0), P2(0, 0)});
  EXPECT_TRUE(std::isnan(SignedCurvature(stall, 0.5)));
}

TEST(InflectionTest, StraightAndArch) {
  const BSplineCurve line = Curve({P2(0, 0), P2(1, 1), P2(3, 3), P2(4, 4)});
  EXPECT_EQ(CountInflections(line, 100.0, CurveEnd::kLeading).count, 0);
  const BSplineCurve arch = Curve({P2(0, 0), P2(1, 2), P2(3, 2), P2(4, 0)});
  EXPECT_EQ(CountInflections(arch, 100.0, CurveEnd::kTrailing).count, 0);
}

TEST(InflectionTest, WiggleCurveFromScene) {
  const Scene scene = ToScene(LoadScene("mul_0_1"));
  const InflectionCount full =
      CountInflections(scene.left(), 1e6, CurveEnd::kTrailing);
  EXPECT_TRUE(full.clamped);
  EXPECT_GE(full.count, 2);
  const InflectionCount s = CountInflections(scene.left(), 1e6, CurveEnd::kLeading);
  EXPECT_EQ(s.count, full.count);
}

TEST(InflectionTest, WindowSelectsTheEnd) {
  // Inflection near t = 0 only.
  const BSplineCurve s = Curve({P2(0, 0), P2(1, 1), P2(2, -1), P2(3, -1.2),
                                P2(6, -1.5), P2(9, -1.2), P2(12, 0)});
  const int leading = CountInflections(s, 1.0, CurveEnd::kLeading).count;
  const int trailing = CountInflections(s, 1.0, CurveEnd::kTrailing).count;
  EXPECT_EQ(trailing, 0);
  EXPECT_GE(CountInflections(s, 1e6, CurveEnd::kLeading).count, 1);
  EXPECT_LE(leading, CountInflections(s, 1e6, CurveEnd::kLeading).count);
}

TEST(InflectionTest, RigidInvariance) {
  Gen gen(501);
  for (int s = 0; s < 20; ++s) {
    const int n = gen.Int(4, 9);
    const auto pts = gen.Points(n, 2, 5.0);
    const RigidTransform g = gen.Motion(2);
    std::vector<Point> moved;
    for (const auto& p : pts) moved.push_back(g.Apply(p));
    const double window = gen.Uniform(1.0, 20.0);
    for (CurveEnd end : {CurveEnd::kLeading, CurveEnd::kTrailing}) {
      EXPECT_EQ(CountInflections(Curve(pts), window, end).count,
                CountInflections(Curve(moved), window, end).count);
    }
  }
}

TEST(InflectionTest, RejectsBadInput) {
  const BSplineCurve line = Curve({P2(0, 0), P2(1, 1), P2(3, 3), P2(4, 4)});
  EXPECT_THROW(CountInflections(line, 0.0, CurveEnd::kLeading), Error);
  const BSplineCurve c3(KnotVector::Uniform(1, 1),
                        {testing::P3(0, 0, 0), testing::P3(1, 1, 1)});
  EXPECT_THROW(CountInflections(c3, 1.0, CurveEnd::kLeading), Error);
}

TEST(PlanTest, BundledScenesAndDeterminism) {
  for (const char* name : {"mul_0_1", "mul_1_1", "example1", "straight"}) {
    const Scene scene = ToScene(LoadScene(name));
    const NormalizedScene n = NormalizeScene(scene);
    const TopologyPlan a = Plan(scene, n, 3, n.gap());
    const TopologyPlan b = Plan(scene, n, 3, n.gap());
    EXPECT_EQ(a.realization, b.realization);
    EXPECT_EQ(a.left_inflections, b.left_inflections);
    EXPECT_EQ(a.right_inflections, b.right_inflections);
    EXPECT_EQ(a.gap, n.gap());
    if (a.topology().point_count() == 5) EXPECT_EQ(a.ties.size(), 1u);
  }
  const Scene s3 = ToScene(LoadScene("example3"));
  EXPECT_THROW(Plan(s3, NormalizeScene(s3), 3, 1.0), Error);
}

TEST(PlanTest, InvariantUnderPlaneMotions) {
  Gen gen(502);
  const SceneFile base = LoadScene("mul_1_1");
  const Scene scene = ToScene(base);
  const NormalizedScene n = NormalizeScene(scene);
  const TopologyPlan ref = Plan(scene, n, 4, n.gap());
  for (int s = 0; s < 10; ++s) {
    const Scene moved = ToScene(testing::Transformed(base, gen.Motion(2)));
    const NormalizedScene m = NormalizeScene(moved);
    const TopologyPlan p = Plan(moved, m, 4, m.gap());
    EXPECT_EQ(p.realization, ref.realization);
    EXPECT_EQ(p.tangent_case, ref.tangent_case);
    EXPECT_EQ(p.left_inflections, ref.left_inflections);
    EXPECT_EQ(p.right_inflections, ref.right_inflections);
  }
}

TEST(TiesTest, OnlyForFivePoints) {
  EXPECT_TRUE(TiesFor(TangentCase::kCase1, 4).empty());
  EXPECT_TRUE(TiesFor(TangentCase::kCase2, 6).empty());
  EXPECT_TRUE(TiesFor(TangentCase::kBaseline, 5).empty());
}

}  // namespace
}  // namespace occluded
