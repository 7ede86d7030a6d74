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
#include "occluded/spline.hpp"
#include "test_util.hpp"

namespace occluded {
namespace {

using testing::Gen;
using testing::P2;

std::vector<KnotVector> ClampedVectors() {
  return {KnotVector({0, 0, 0, 0, 1, 1, 1, 1}, 3),
          KnotVector({0, 0, 0, 0, 0.5, 1, 1, 1, 1}, 3),
          KnotVector({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 4),
          KnotVector({0, 0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 1, 1}, 3)};
}

BSplineCurve LeftCurve() {
  return BSplineCurve(KnotVector::Uniform(3, 1),
                      {P2(0, 0), P2(1, 4), P2(2, 1), P2(4, 3)});
}

TEST(KnotVectorTest, UniformMatchesKnownSequences) {
  EXPECT_EQ(KnotVector::Uniform(3, 1).knots(),
            (std::vector<double>{0, 0, 0, 0, 1, 1, 1, 1}));
  EXPECT_EQ(KnotVector::Uniform(3, 2).knots(),
            (std::vector<double>{0, 0, 0, 0, 0.5, 1, 1, 1, 1}));
  EXPECT_EQ(KnotVector::Uniform(4, 1).knots(),
            (std::vector<double>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1}));
  EXPECT_EQ(KnotVector::Uniform(3, 4).point_count(), 7);
  EXPECT_EQ(KnotVector::Uniform(3, 4).piece_count(), 4);
}

TEST(KnotVectorTest, RejectsInvalidVectors) {
  auto code = [](std::vector<double> k, int d) {
    try {
      KnotVector kv(std::move(k), d);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  EXPECT_EQ(code({0, 0, 0, 1, 1, 1, 1}, 3), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code({0, 0, 0, 0, 0.7, 0.3, 1, 1, 1, 1}, 3),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code({0, 0, 0, 0, 2, 2, 2, 2}, 3), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code({0, 0, 0, 0, 1, 1, 1, 1}, 0), ErrorCode::kInvalidArgument);
  EXPECT_THROW(KnotVector::Uniform(3, 0), Error);
}

TEST(BasisTest, ClampedEndpoint) {
  const KnotVector kv = KnotVector::Uniform(3, 1);
  EXPECT_DOUBLE_EQ(Basis(0, 3, 0.0, kv), 1.0);
  EXPECT_DOUBLE_EQ(Basis(3, 3, 1.0, kv), 1.0);
}

TEST(BasisTest, BernsteinWeightsAtMidpoint) {
  const KnotVector kv = KnotVector::Uniform(3, 1);
  const double expected[] = {1.0 / 8, 3.0 / 8, 3.0 / 8, 1.0 / 8};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(Basis(i, 3, 0.5, kv), expected[i], 1e-15) << i;
  }
}

TEST(BasisTest, PartitionOfUnityAt037) {
  const KnotVector kv = KnotVector::Uniform(3, 1);
  double sum = 0.0;
  for (int i = 0; i < 4; ++i) sum += Basis(i, 3, 0.37, kv);
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(BasisTest, PropertiesOnRandomParameters) {
  Gen gen(101);
  for (const KnotVector& kv : ClampedVectors()) {
    const int k = kv.degree();
    for (int s = 0; s < 1000; ++s) {
      const double t = gen.Uniform(0.0, 1.0);
      double sum = 0.0;
      for (int i = 0; i < kv.point_count(); ++i) {
        const double b = Basis(i, k, t, kv);
        EXPECT_GE(b, 0.0);
        // Local support on [t_i, t_{i+k+1}].
        if (t < kv[i] || t > kv[i + k + 1]) EXPECT_EQ(b, 0.0);
        sum += b;
      }
      ASSERT_NEAR(sum, 1.0, 1e-12) << "t = " << t;
    }
  }
}

TEST(BasisTest, RejectsBadArguments) {
  const KnotVector kv = KnotVector::Uniform(3, 1);
  EXPECT_THROW(Basis(4, 3, 0.5, kv), Error);
  EXPECT_THROW(Basis(-1, 3, 0.5, kv), Error);
  EXPECT_THROW(Basis(0, 3, 1.5, kv), Error);
  EXPECT_THROW(Basis(0, 3, std::nan(""), kv), Error);
}

TEST(BasisTest, DerivativeMatchesFiniteDifference) {
  Gen gen(102);
  for (const KnotVector& kv : ClampedVectors()) {
    for (int s = 0; s < 50; ++s) {
      const double t = gen.Uniform(0.01, 0.99);
      if (std::abs(t - 0.5) < 1e-3 || std::abs(t - 0.25) < 1e-3 ||
          std::abs(t - 0.75) < 1e-3) {
        continue;
      }
      const double h = 1e-6;
      for (int i = 0; i < kv.point_count(); ++i) {
        const double fd =
            (Basis(i, kv.degree(), t + h, kv) - Basis(i, kv.degree(), t - h, kv)) /
            (2 * h);
        EXPECT_NEAR(BasisDerivative(i, kv.degree(), t, kv, 1), fd, 1e-6);
      }
    }
  }
}

TEST(CurveTest, EndpointsAndMidpoint) {
  const BSplineCurve c = LeftCurve();
  EXPECT_EQ(c.Evaluate(0.0), P2(0, 0));
  EXPECT_EQ(c.Evaluate(1.0), P2(4, 3));
  const Point expected =
      (1.0 / 8) * P2(0, 0) + (3.0 / 8) * P2(1, 4) + (3.0 / 8) * P2(2, 1) +
      (1.0 / 8) * P2(4, 3);
  EXPECT_LT((c.Evaluate(0.5) - expected).norm(), 1e-15);
}

TEST(CurveTest, EndpointInterpolationOnRandomCurves) {
  Gen gen(103);
  for (const KnotVector& kv : ClampedVectors()) {
    for (int dim : {2, 3}) {
      for (int s = 0; s < 50; ++s) {
        const BSplineCurve c(kv, gen.Points(kv.point_count(), dim, 10.0));
        EXPECT_LT((c.Evaluate(0.0) - c.front()).norm(), 1e-12);
        EXPECT_LT((c.Evaluate(1.0) - c.back()).norm(), 1e-12);
      }
    }
  }
}

TEST(CurveTest, ContinuousAcrossInteriorKnot) {
  Gen gen(104);
  const KnotVector kv = KnotVector::Uniform(3, 2);
  for (int s = 0; s < 50; ++s) {
    const BSplineCurve c(kv, gen.Points(5, 2, 10.0));
    const Point left = c.Evaluate(0.5 - 1e-13);
    const Point right = c.Evaluate(0.5);
    EXPECT_LT((left - right).norm(), 1e-10);
  }
}

TEST(CurveTest, RejectsMismatchedInput) {
  EXPECT_THROW(BSplineCurve(KnotVector::Uniform(3, 1), {P2(0, 0), P2(1, 1)}),
               Error);
  EXPECT_THROW(BSplineCurve(KnotVector::Uniform(3, 1),
                            {P2(0, 0), P2(1, 1), P2(2, 2),
                             testing::P3(1, 2, 3)}),
               Error);
  EXPECT_THROW(BSplineCurve(KnotVector::Uniform(3, 1),
                            {P2(0, 0), P2(1, 1), P2(2, 2), P2(NAN, 0)}),
               Error);
}

TEST(EndTangentsTest, DirectDifferences) {
  const auto [start, end] = EndTangents(LeftCurve());
  EXPECT_EQ(start, P2(1, 4));
  EXPECT_EQ(end, P2(2, 2));
}

TEST(EndTangentsTest, TwoPointLine) {
  const BSplineCurve line(KnotVector::Uniform(1, 1), {P2(1, 1), P2(3, 2)});
  const auto [start, end] = EndTangents(line);
  EXPECT_EQ(start, end);
}

TEST(EndTangentsTest, AgreeWithFiniteDifferenceDirection) {
  Gen gen(105);
  for (const KnotVector& kv : ClampedVectors()) {
    for (int s = 0; s < 50; ++s) {
      const BSplineCurve c(kv, gen.Points(kv.point_count(), 2, 5.0));
      const auto [start, end] = EndTangents(c);
      const double h = 1e-7;
      const Point d0 = (c.Evaluate(1e-6 + h) - c.Evaluate(1e-6 - h)) / (2 * h);
      const Point d1 =
          (c.Evaluate(1 - 1e-6 + h) - c.Evaluate(1 - 1e-6 - h)) / (2 * h);
      auto angle = [](const Point& a, const Point& b) {
        return std::acos(std::clamp(a.dot(b) / (a.norm() * b.norm()), -1.0, 1.0));
      };
      EXPECT_LT(angle(start, d0), 1e-4);
      EXPECT_LT(angle(end, d1), 1e-4);
    }
  }
}

TEST(SamplePolylineTest, Endpoints) {
  const auto two = SamplePolyline(LeftCurve(), 2);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0], P2(0, 0));
  EXPECT_EQ(two[1], P2(4, 3));
  const auto many = SamplePolyline(LeftCurve(), 101);
  ASSERT_EQ(many.size(), 101u);
  EXPECT_EQ(many.front(), P2(0, 0));
  EXPECT_EQ(many.back(), P2(4, 3));
  EXPECT_THROW(SamplePolyline(LeftCurve(), 1), Error);
}

TEST(SamplePolylineTest, StraightPolygonGivesCollinearSamples) {
  const BSplineCurve line(KnotVector::Uniform(3, 1),
                          {P2(0, 0), P2(1, 2), P2(2, 4), P2(5, 10)});
  for (const Point& p : SamplePolyline(line, 3)) {
    EXPECT_NEAR(2 * p[0] - p[1], 0.0, 1e-14);
  }
}

}  // namespace
}  // namespace occluded
