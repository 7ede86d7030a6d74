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

#include "occluded/euler_lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "occluded/error.hpp"

namespace occluded {
namespace {

constexpr std::string_view kModule = "euler_lagrange";

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

Sequence ShiftOnce(const Sequence& s, bool inverse) {
  Sequence out;
  out.first = inverse ? s.first : s.first - 1;
  const int last = inverse ? s.last() + 1 : s.last();
  out.values.reserve(last - out.first + 1);
  for (int i = out.first; i <= last; ++i) {
    const double shifted = inverse ? s.At(i - 1) : s.At(i + 1);
    out.values.push_back(shifted - s.At(i));
  }
  return out;
}

// Coordinate of a solution point as constant + coeffs . u.
struct LinearForm {
  double constant = 0.0;
  Eigen::VectorXd coeffs;
};

std::string CoordName(int c) { return std::string(1, "xyz"[c]); }

}  // namespace

double Sequence::At(int i) const {
  if (i < first || i > last()) return 0.0;
  return values[i - first];
}

Sequence ShiftDifference(const Sequence& seq, int power, bool inverse) {
  if (power < 0) Fail(ErrorCode::kInvalidArgument, "negative shift power");
  Sequence out = seq;
  for (int p = 0; p < power; ++p) out = ShiftOnce(out, inverse);
  return out;
}

Sequence ShiftDifference(const Sequence& seq, int power, bool inverse,
                         int first, int last) {
  const Sequence full = ShiftDifference(seq, power, inverse);
  Sequence out{.first = first};
  for (int i = first; i <= last; ++i) out.values.push_back(full.At(i));
  return out;
}

Eigen::VectorXd ElOperatorForm(const LagrangianExpr& expr,
                               const DifferenceTable& table,
                               std::span<const int> free_indices) {
  if (free_indices.empty()) {
    Fail(ErrorCode::kInvalidArgument, "no free points");
  }
  const int dim = table.dim();
  // dL/dI_{i,l} gathered into one sequence per (order, coordinate).
  std::map<int, std::vector<DiffGradient>> by_order;
  for (auto& g : DiffGradients(expr, table)) by_order[g.ref.order].push_back(g);

  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim * free_indices.size());
  for (const auto& [order, grads] : by_order) {
    const int first = grads.front().ref.index;
    const int last = grads.back().ref.index;
    for (int c = 0; c < dim; ++c) {
      Sequence g{.first = first,
                 .values = std::vector<double>(last - first + 1, 0.0)};
      for (const auto& d : grads) g.values[d.ref.index - first] += d.value[c];
      const Sequence shifted = ShiftDifference(g, order, /*inverse=*/true);
      for (std::size_t k = 0; k < free_indices.size(); ++k) {
        e[k * dim + c] += shifted.At(free_indices[k]);
      }
    }
  }
  return e;
}

Scene::Scene(BSplineCurve left, BSplineCurve right,
             std::optional<Topology> solution)
    : left_(std::move(left)),
      right_(std::move(right)),
      solution_(std::move(solution)) {
  if (left_.dim() != right_.dim()) {
    Fail(ErrorCode::kInvalidArgument, "input curves differ in dimension");
  }
  if (left_.size() < 2 || right_.size() < 2) {
    Fail(ErrorCode::kInvalidArgument,
         "each input curve needs at least 2 control points");
  }
  if ((left_.back() - right_.front()).norm() == 0.0) {
    Fail(ErrorCode::kDegenerateScene,
         "left curve ends where the right curve starts; there is no gap");
  }
  if (solution_ && (solution_->degree < 1 || solution_->pieces < 1)) {
    Fail(ErrorCode::kInvalidArgument, "solution degree and pieces must be >= 1");
  }
}

Scene Scene::WithSolution(Topology topology) const {
  return Scene(left_, right_, topology);
}

NormalizedScene NormalizeScene(const Scene& scene) {
  const auto& l = scene.left().points();
  const auto& r = scene.right().points();
  RigidTransform t = scene.dim() == 2
                         ? Normalize2d(l.back(), r.front())
                         : Normalize3d(l.back(), r.front(), l[l.size() - 2]);
  NormalizedScene out{.transform = t};
  for (const auto& p : l) out.left.push_back(t.Apply(p));
  for (const auto& p : r) out.right.push_back(t.Apply(p));
  return out;
}

struct ResidualSystem::Impl {
  LagrangianExpr expr;
  UnknownLayout layout;
  std::vector<Point> left;
  std::vector<Point> right;
  int max_order = 1;
  Eigen::VectorXd offset;  // point-major, size point_count * dim
  Eigen::MatrixXd jac;     // d(points)/du

  int first_index() const { return 2 - static_cast<int>(left.size()); }

  std::vector<Point> Points(const Eigen::VectorXd& u) const {
    const Eigen::VectorXd flat = offset + jac * u;
    std::vector<Point> pts;
    for (int j = 0; j < layout.point_count; ++j) {
      pts.push_back(flat.segment(j * layout.dim, layout.dim));
    }
    // Boundary points are copied exactly rather than recomputed.
    pts.front() = left.back();
    pts.back() = right.front();
    // Tied coordinates are recomputed from their neighbours so the relation
    // holds bit for bit.
    for (const auto& tie : layout.ties) {
      pts[tie.point - 1][tie.coord] =
          tie.prev_weight * pts[tie.point - 2][tie.coord] +
          tie.next_weight * pts[tie.point][tie.coord];
    }
    return pts;
  }

  std::vector<Point> Full(const Eigen::VectorXd& u) const {
    std::vector<Point> full(left.begin(), left.end() - 1);
    for (auto& p : Points(u)) full.push_back(std::move(p));
    full.insert(full.end(), right.begin() + 1, right.end());
    return full;
  }

  DifferenceTable Table(const Eigen::VectorXd& u) const {
    return DifferenceTable(Full(u), first_index(), max_order);
  }

  void CheckUnknowns(const Eigen::VectorXd& u) const {
    if (u.size() != layout.unknown_count()) {
      Fail(ErrorCode::kInvalidArgument,
           "expected " + std::to_string(layout.unknown_count()) +
               " unknowns, got " + std::to_string(u.size()));
    }
  }
};

ResidualSystem::ResidualSystem(const NormalizedScene& scene,
                               const LagrangianExpr& expr,
                               UnknownLayout layout)
    : impl_(std::make_unique<Impl>()) {
  Impl& m = *impl_;
  m.expr = expr;
  m.layout = std::move(layout);
  m.left = scene.left;
  m.right = scene.right;
  const UnknownLayout& lay = m.layout;
  const int dim = lay.dim;
  const int n = lay.point_count;
  const int unknowns = lay.unknown_count();
  if (scene.dim() != dim) {
    Fail(ErrorCode::kInvalidArgument, "layout/scene dimension mismatch");
  }
  if (n < 4) {
    Fail(ErrorCode::kInvalidArgument,
         "the solution needs at least 4 control points, got " +
             std::to_string(n));
  }
  ValidateLagrangian(expr, dim);

  const int first = m.first_index();
  const int last = n + static_cast<int>(m.right.size()) - 1;
  m.max_order = 0;
  for (const auto& d : CollectDiffs(expr)) {
    if (d.index < first || d.index + d.order > last) {
      Fail(ErrorCode::kInvalidArgument,
           "D" + std::to_string(d.order) + "(" + std::to_string(d.index) +
               ") reaches outside the control sequence [" +
               std::to_string(first) + ", " + std::to_string(last) + "]");
    }
    m.max_order = std::max(m.max_order, d.order);
  }

  // forms[j][c] for solution point j (0-based) and coordinate c.
  std::vector<std::vector<std::optional<LinearForm>>> forms(
      n, std::vector<std::optional<LinearForm>>(dim));
  auto fixed = [&](double v) {
    return LinearForm{v, Eigen::VectorXd::Zero(unknowns)};
  };
  const Point& p0 = m.left[m.left.size() - 2];
  const Point& p1 = m.left.back();
  const Point& pn = m.right.front();
  const Point& pn1 = m.right[1];
  const bool literal = lay.form == BoundaryForm::kLiteral;
  for (int c = 0; c < dim; ++c) {
    forms[0][c] = fixed(p1[c]);
    forms[n - 1][c] = fixed(pn[c]);
    LinearForm a = fixed(literal ? 0.0 : p1[c]);
    a.coeffs[0] = p1[c] - p0[c];
    forms[1][c] = a;
    LinearForm b = fixed(literal ? 0.0 : pn[c]);
    b.coeffs[1] = pn[c] - pn1[c];
    forms[n - 2][c] = b;
  }
  for (std::size_t k = 0; k < lay.free.size(); ++k) {
    const auto& f = lay.free[k];
    LinearForm v = fixed(0.0);
    v.coeffs[2 + k] = 1.0;
    forms[f.point - 1][f.coord] = v;
  }
  for (const auto& tie : lay.ties) {
    const auto& prev = forms[tie.point - 2][tie.coord];
    const auto& next = forms[tie.point][tie.coord];
    if (!prev || !next) {
      Fail(ErrorCode::kInvalidArgument,
           "tie on point " + std::to_string(tie.point) +
               " refers to another tied coordinate");
    }
    forms[tie.point - 1][tie.coord] =
        LinearForm{tie.prev_weight * prev->constant +
                       tie.next_weight * next->constant,
                   tie.prev_weight * prev->coeffs +
                       tie.next_weight * next->coeffs};
  }

  m.offset = Eigen::VectorXd::Zero(n * dim);
  m.jac = Eigen::MatrixXd::Zero(n * dim, unknowns);
  for (int j = 0; j < n; ++j) {
    for (int c = 0; c < dim; ++c) {
      if (!forms[j][c]) {
        Fail(ErrorCode::kInvalidArgument,
             "coordinate " + CoordName(c) + " of point " +
                 std::to_string(j + 1) + " is neither free nor tied");
      }
      m.offset[j * dim + c] = forms[j][c]->constant;
      m.jac.row(j * dim + c) = forms[j][c]->coeffs.transpose();
    }
  }
}

ResidualSystem::~ResidualSystem() = default;
ResidualSystem::ResidualSystem(ResidualSystem&&) noexcept = default;
ResidualSystem& ResidualSystem::operator=(ResidualSystem&&) noexcept = default;

int ResidualSystem::unknown_count() const {
  return impl_->layout.unknown_count();
}

const UnknownLayout& ResidualSystem::layout() const { return impl_->layout; }

int ResidualSystem::first_index() const { return impl_->first_index(); }

std::vector<Point> ResidualSystem::Reconstruct(const Eigen::VectorXd& u) const {
  impl_->CheckUnknowns(u);
  return impl_->Points(u);
}

std::vector<Point> ResidualSystem::FullSequence(const Eigen::VectorXd& u) const {
  impl_->CheckUnknowns(u);
  return impl_->Full(u);
}

double ResidualSystem::Total(const Eigen::VectorXd& u) const {
  impl_->CheckUnknowns(u);
  return EvaluateLagrangian(impl_->expr, impl_->Table(u));
}

Eigen::VectorXd ResidualSystem::Residual(const Eigen::VectorXd& u) const {
  impl_->CheckUnknowns(u);
  const int n = impl_->layout.point_count;
  std::vector<int> solution_indices(n);
  for (int j = 0; j < n; ++j) solution_indices[j] = j + 1;
  const Eigen::VectorXd grad =
      GradLagrangian(impl_->expr, impl_->Table(u), solution_indices);
  return impl_->jac.transpose() * grad;
}

Eigen::MatrixXd ResidualSystem::Jacobian(const Eigen::VectorXd& u) const {
  const int k = unknown_count();
  Eigen::MatrixXd j(k, k);
  for (int col = 0; col < k; ++col) {
    const double h = 1e-7 * (std::abs(u[col]) + 1.0);
    Eigen::VectorXd up = u;
    Eigen::VectorXd down = u;
    up[col] += h;
    down[col] -= h;
    j.col(col) = (Residual(up) - Residual(down)) / (up[col] - down[col]);
  }
  return j;
}

UnknownLayout BuildLayout(const NormalizedScene& scene,
                          const Topology& topology,
                          const LagrangianExpr& expr,
                          std::span<const CoordinateTie> ties,
                          BoundaryForm form) {
  UnknownLayout layout{.dim = scene.dim(),
                       .point_count = topology.point_count(),
                       .form = form,
                       .ties = {ties.begin(), ties.end()}};
  const int n = layout.point_count;
  if (n < 4) {
    Fail(ErrorCode::kInvalidArgument,
         "degree " + std::to_string(topology.degree) + " with " +
             std::to_string(topology.pieces) +
             " piece(s) gives fewer than 4 control points");
  }
  std::vector<std::vector<bool>> tied(n + 1,
                                      std::vector<bool>(layout.dim, false));
  for (const auto& t : layout.ties) {
    if (t.point < 3 || t.point > n - 2 || t.coord < 0 ||
        t.coord >= layout.dim) {
      Fail(ErrorCode::kInvalidArgument,
           "tie on point " + std::to_string(t.point) + " coordinate " +
               std::to_string(t.coord) + " is not an interior coordinate");
    }
    if (tied[t.point][t.coord]) {
      Fail(ErrorCode::kInvalidArgument,
           "coordinate tied twice on point " + std::to_string(t.point));
    }
    tied[t.point][t.coord] = true;
  }
  for (int j = 3; j <= n - 2; ++j) {
    for (int c = 0; c < layout.dim; ++c) {
      if (!tied[j][c]) layout.free.push_back({j, c});
    }
  }

  // Independent equations = generic rank of the residual Jacobian.
  const ResidualSystem probe(scene, expr, layout);
  const int unknowns = layout.unknown_count();
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_real_distribution<double> ratio(0.25, 2.0);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  int rank = 0;
  for (int sample = 0; sample < 3 && rank < unknowns; ++sample) {
    Eigen::VectorXd u(unknowns);
    u[0] = ratio(rng);
    u[1] = ratio(rng);
    for (int k = 2; k < unknowns; ++k) u[k] = scene.gap() * coord(rng);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(probe.Jacobian(u));
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s[0] == 0.0) continue;
    rank = std::max(rank, static_cast<int>((s.array() > 1e-6 * s[0]).count()));
  }
  layout.equation_count = rank;
  if (rank != unknowns) {
    Fail(ErrorCode::kBalance,
         std::string(rank < unknowns ? "under" : "over") + "-determined: " +
             std::to_string(unknowns) + " unknowns but the Lagrangian yields " +
             std::to_string(rank) + " independent Euler-Lagrange equations");
  }
  return layout;
}

}  // namespace occluded
