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

// Difference invariants of a control-point sequence and the small expression
// language used to write Lagrangians over them.
//
// Grammar (whitespace is ignored):
//
//   expr   := term ('+' term)*
//   term   := factor ('*' factor)*
//   factor := number | 'dot(' vec ',' vec ')'
//           | 'trip(' vec ',' vec ',' vec ')' | '(' expr ')'
//   vec    := 'D' order '(' index ')'
//
// D<l>(i) is the l-th forward difference p_i^l, with p_i^0 = p_i and
// p_i^l = p_{i+1}^{l-1} - p_i^{l-1}. Indices follow the full control
// sequence in which the occluded curve's first control point has index 1;
// left-curve points have indices <= 0. trip(a,b,c) = (a x b) . c, 3D only.

#ifndef OCCLUDED_LAGRANGIAN_HPP_
#define OCCLUDED_LAGRANGIAN_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "occluded/spline.hpp"

namespace occluded {

// Every forward difference p_i^l, l <= max_order, of a point sequence whose
// first element carries index `first_index`.
class DifferenceTable {
 public:
  DifferenceTable(std::vector<Point> points, int first_index, int max_order);

  int first_index() const { return first_index_; }
  int last_index() const {
    return first_index_ + static_cast<int>(diffs_.front().size()) - 1;
  }
  int max_order() const { return static_cast<int>(diffs_.size()) - 1; }
  int dim() const { return static_cast<int>(diffs_.front().front().size()); }
  const std::vector<Point>& base() const { return diffs_.front(); }

  bool Contains(int order, int index) const;
  // Throws Error(kInvalidArgument) when (order, index) is not stored.
  const Point& Diff(int order, int index) const;

 private:
  int first_index_;
  std::vector<std::vector<Point>> diffs_;
};

struct DiffRef {
  int order = 0;
  int index = 0;
  friend auto operator<=>(const DiffRef&, const DiffRef&) = default;
};

struct LagrangianExpr {
  enum class Kind { kConstant, kDiff, kDot, kTriple, kSum, kProduct };

  Kind kind = Kind::kConstant;
  double value = 0.0;  // kConstant
  DiffRef diff;        // kDiff
  std::vector<LagrangianExpr> children;

  friend bool operator==(const LagrangianExpr&, const LagrangianExpr&) =
      default;
};

// Throws Error(kParse) naming the byte offset of the first offending token.
LagrangianExpr ParseLagrangian(std::string_view text);

// Canonical text form; ParseLagrangian(ToString(e)) == e.
std::string ToString(const LagrangianExpr& expr);

// Checks difference orders are 1..3 and that trip() is only used in 3D.
// Throws Error(kParse) with a "type error" message.
void ValidateLagrangian(const LagrangianExpr& expr, int dim);

// Every difference leaf, in first-appearance order (duplicates kept).
std::vector<DiffRef> CollectDiffs(const LagrangianExpr& expr);
int MaxDiffOrder(const LagrangianExpr& expr);

double EvaluateLagrangian(const LagrangianExpr& expr,
                          const DifferenceTable& table);

// dL/dI_{i,l} for each distinct leaf (i, l), sorted by (order, index).
struct DiffGradient {
  DiffRef ref;
  Point value;
};
std::vector<DiffGradient> DiffGradients(const LagrangianExpr& expr,
                                        const DifferenceTable& table);

// Exact gradient with respect to the coordinates of the points at
// `free_indices` (table indexing). Entry k*dim + c is the derivative with
// respect to coordinate c of point free_indices[k].
Eigen::VectorXd GradLagrangian(const LagrangianExpr& expr,
                               const DifferenceTable& table,
                               std::span<const int> free_indices);

}  // namespace occluded

#endif  // OCCLUDED_LAGRANGIAN_HPP_
