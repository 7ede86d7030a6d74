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

#include "occluded/lagrangian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <string>

#include <Eigen/Geometry>

#include "occluded/error.hpp"

namespace occluded {
namespace {

constexpr std::string_view kModule = "lagrangian";
using Kind = LagrangianExpr::Kind;

[[noreturn]] void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, kModule, message);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  LagrangianExpr Parse() {
    LagrangianExpr e = ParseExpr();
    SkipSpace();
    if (pos_ != text_.size()) SyntaxError("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void SyntaxError(const std::string& what) const {
    Fail(ErrorCode::kParse,
         "syntax error at byte " + std::to_string(pos_) + ": " + what);
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool Peek(char c) {
    SkipSpace();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void Expect(char c) {
    if (!Peek(c)) SyntaxError(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool ConsumeWord(std::string_view word) {
    SkipSpace();
    if (text_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() &&
        std::isalnum(static_cast<unsigned char>(text_[end]))) {
      return false;
    }
    pos_ = end;
    return true;
  }

  LagrangianExpr ParseExpr() {
    LagrangianExpr first = ParseTerm();
    if (!Peek('+')) return first;
    LagrangianExpr sum{.kind = Kind::kSum};
    sum.children.push_back(std::move(first));
    while (Peek('+')) {
      ++pos_;
      sum.children.push_back(ParseTerm());
    }
    return sum;
  }

  LagrangianExpr ParseTerm() {
    LagrangianExpr first = ParseFactor();
    if (!Peek('*')) return first;
    LagrangianExpr product{.kind = Kind::kProduct};
    product.children.push_back(std::move(first));
    while (Peek('*')) {
      ++pos_;
      product.children.push_back(ParseFactor());
    }
    return product;
  }

  LagrangianExpr ParseFactor() {
    SkipSpace();
    if (pos_ >= text_.size()) SyntaxError("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LagrangianExpr inner = ParseExpr();
      Expect(')');
      return inner;
    }
    if (ConsumeWord("dot")) return ParseCall(Kind::kDot, 2);
    if (ConsumeWord("trip")) return ParseCall(Kind::kTriple, 3);
    if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      return ParseNumber();
    }
    SyntaxError("expected a number, dot(...), trip(...) or '('");
  }

  LagrangianExpr ParseCall(Kind kind, int arity) {
    LagrangianExpr call{.kind = kind};
    Expect('(');
    for (int a = 0; a < arity; ++a) {
      if (a > 0) Expect(',');
      call.children.push_back(ParseDiff());
    }
    Expect(')');
    return call;
  }

  LagrangianExpr ParseDiff() {
    if (!Peek('D')) SyntaxError("expected a difference D<order>(<index>)");
    ++pos_;
    const int order = ParseInt(/*allow_sign=*/false);
    Expect('(');
    SkipSpace();
    const int index = ParseInt(/*allow_sign=*/true);
    Expect(')');
    return LagrangianExpr{.kind = Kind::kDiff, .diff = {order, index}};
  }

  int ParseInt(bool allow_sign) {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (!allow_sign && begin < end && *begin == '-') {
      SyntaxError("expected a non-negative integer");
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) SyntaxError("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return value;
  }

  LagrangianExpr ParseNumber() {
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) SyntaxError("malformed number");
    pos_ += static_cast<std::size_t>(ptr - begin);
    return LagrangianExpr{.kind = Kind::kConstant, .value = value};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void Print(const LagrangianExpr& e, std::string& out) {
  switch (e.kind) {
    case Kind::kConstant: {
      char buf[64];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), e.value);
      out.append(buf, ptr);
      return;
    }
    case Kind::kDiff:
      out += "D" + std::to_string(e.diff.order) + "(" +
             std::to_string(e.diff.index) + ")";
      return;
    case Kind::kDot:
    case Kind::kTriple:
      out += e.kind == Kind::kDot ? "dot(" : "trip(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += ", ";
        Print(e.children[i], out);
      }
      out += ")";
      return;
    case Kind::kSum:
    case Kind::kProduct: {
      const bool sum = e.kind == Kind::kSum;
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i > 0) out += sum ? " + " : " * ";
        const Kind ck = e.children[i].kind;
        const bool wrap = ck == Kind::kSum || (!sum && ck == Kind::kProduct);
        if (wrap) out += "(";
        Print(e.children[i], out);
        if (wrap) out += ")";
      }
      return;
    }
  }
}

void Collect(const LagrangianExpr& e, std::vector<DiffRef>& out) {
  if (e.kind == Kind::kDiff) out.push_back(e.diff);
  for (const auto& c : e.children) Collect(c, out);
}

const Point& Leaf(const LagrangianExpr& e, const DifferenceTable& table) {
  return table.Diff(e.diff.order, e.diff.index);
}

void RequireSpace(const Point& a) {
  if (a.size() != 3) {
    Fail(ErrorCode::kInvalidArgument, "trip() needs 3D differences");
  }
}

double Triple(const Point& a, const Point& b, const Point& c) {
  RequireSpace(a);
  return Eigen::Vector3d(a).cross(Eigen::Vector3d(b)).dot(Eigen::Vector3d(c));
}

double Eval(const LagrangianExpr& e, const DifferenceTable& table) {
  switch (e.kind) {
    case Kind::kConstant:
      return e.value;
    case Kind::kDiff:
      Fail(ErrorCode::kInvalidArgument,
           "a difference cannot be used as a scalar");
    case Kind::kDot:
      return Leaf(e.children[0], table).dot(Leaf(e.children[1], table));
    case Kind::kTriple:
      return Triple(Leaf(e.children[0], table), Leaf(e.children[1], table),
                    Leaf(e.children[2], table));
    case Kind::kSum: {
      double s = 0.0;
      for (const auto& c : e.children) s += Eval(c, table);
      return s;
    }
    case Kind::kProduct: {
      double p = 1.0;
      for (const auto& c : e.children) p *= Eval(c, table);
      return p;
    }
  }
  return 0.0;
}

// Reverse-mode pass: accumulates seed * d(e)/d(leaf) into `adjoints`.
void Backprop(const LagrangianExpr& e, const DifferenceTable& table,
              double seed, std::map<DiffRef, Point>& adjoints) {
  auto add = [&](const LagrangianExpr& leaf, const Point& g) {
    auto [it, inserted] = adjoints.try_emplace(leaf.diff, g);
    if (!inserted) it->second += g;
  };
  switch (e.kind) {
    case Kind::kConstant:
    case Kind::kDiff:
      return;
    case Kind::kDot: {
      const Point& a = Leaf(e.children[0], table);
      const Point& b = Leaf(e.children[1], table);
      add(e.children[0], seed * b);
      add(e.children[1], seed * a);
      return;
    }
    case Kind::kTriple: {
      RequireSpace(Leaf(e.children[0], table));
      const Eigen::Vector3d a = Leaf(e.children[0], table);
      const Eigen::Vector3d b = Leaf(e.children[1], table);
      const Eigen::Vector3d c = Leaf(e.children[2], table);
      add(e.children[0], Point(seed * b.cross(c)));
      add(e.children[1], Point(seed * c.cross(a)));
      add(e.children[2], Point(seed * a.cross(b)));
      return;
    }
    case Kind::kSum:
      for (const auto& c : e.children) Backprop(c, table, seed, adjoints);
      return;
    case Kind::kProduct: {
      std::vector<double> values;
      values.reserve(e.children.size());
      for (const auto& c : e.children) values.push_back(Eval(c, table));
      for (std::size_t j = 0; j < e.children.size(); ++j) {
        double others = seed;
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (i != j) others *= values[i];
        }
        Backprop(e.children[j], table, others, adjoints);
      }
      return;
    }
  }
}

double Binomial(int n, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

DifferenceTable::DifferenceTable(std::vector<Point> points, int first_index,
                                 int max_order)
    : first_index_(first_index) {
  CheckPoints(points);
  if (max_order < 0 || max_order >= static_cast<int>(points.size())) {
    Fail(ErrorCode::kInvalidArgument,
         "difference order " + std::to_string(max_order) +
             " needs more than " + std::to_string(points.size()) + " points");
  }
  diffs_.push_back(std::move(points));
  for (int l = 1; l <= max_order; ++l) {
    const auto& prev = diffs_.back();
    std::vector<Point> next;
    next.reserve(prev.size() - 1);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
      next.push_back(prev[i + 1] - prev[i]);
    }
    diffs_.push_back(std::move(next));
  }
}

bool DifferenceTable::Contains(int order, int index) const {
  if (order < 0 || order > max_order()) return false;
  const int offset = index - first_index_;
  return offset >= 0 && offset < static_cast<int>(diffs_[order].size());
}

const Point& DifferenceTable::Diff(int order, int index) const {
  if (!Contains(order, index)) {
    Fail(ErrorCode::kInvalidArgument,
         "D" + std::to_string(order) + "(" + std::to_string(index) +
             ") is outside the control sequence [" +
             std::to_string(first_index_) + ", " +
             std::to_string(last_index()) + "]");
  }
  return diffs_[order][index - first_index_];
}

LagrangianExpr ParseLagrangian(std::string_view text) {
  return Parser(text).Parse();
}

std::string ToString(const LagrangianExpr& expr) {
  std::string out;
  Print(expr, out);
  return out;
}

std::vector<DiffRef> CollectDiffs(const LagrangianExpr& expr) {
  std::vector<DiffRef> out;
  Collect(expr, out);
  return out;
}

int MaxDiffOrder(const LagrangianExpr& expr) {
  int order = 0;
  for (const auto& d : CollectDiffs(expr)) order = std::max(order, d.order);
  return order;
}

void ValidateLagrangian(const LagrangianExpr& expr, int dim) {
  if (expr.kind == Kind::kTriple && dim != 3) {
    Fail(ErrorCode::kParse,
         "type error: trip() needs 3D points, scene is " +
             std::to_string(dim) + "D");
  }
  if (expr.kind == Kind::kDiff && (expr.diff.order < 1 || expr.diff.order > 3)) {
    Fail(ErrorCode::kParse, "type error: difference order " +
                                std::to_string(expr.diff.order) +
                                " outside 1..3");
  }
  for (const auto& c : expr.children) ValidateLagrangian(c, dim);
}

double EvaluateLagrangian(const LagrangianExpr& expr,
                          const DifferenceTable& table) {
  return Eval(expr, table);
}

std::vector<DiffGradient> DiffGradients(const LagrangianExpr& expr,
                                        const DifferenceTable& table) {
  std::map<DiffRef, Point> adjoints;
  Backprop(expr, table, 1.0, adjoints);
  std::vector<DiffGradient> out;
  out.reserve(adjoints.size());
  for (auto& [ref, g] : adjoints) out.push_back({ref, std::move(g)});
  return out;
}

Eigen::VectorXd GradLagrangian(const LagrangianExpr& expr,
                               const DifferenceTable& table,
                               std::span<const int> free_indices) {
  if (free_indices.empty()) {
    Fail(ErrorCode::kInvalidArgument, "gradient needs at least one free point");
  }
  const int dim = table.dim();
  std::map<int, int> slot;
  for (std::size_t k = 0; k < free_indices.size(); ++k) {
    const int idx = free_indices[k];
    if (!table.Contains(0, idx)) {
      Fail(ErrorCode::kInvalidArgument,
           "free point " + std::to_string(idx) + " is outside the sequence");
    }
    slot.emplace(idx, static_cast<int>(k));
  }
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(dim * free_indices.size());
  // I_{i,l} = sum_j (-1)^{l-j} C(l,j) p_{i+j}.
  for (const auto& [ref, g] : DiffGradients(expr, table)) {
    for (int j = 0; j <= ref.order; ++j) {
      auto it = slot.find(ref.index + j);
      if (it == slot.end()) continue;
      const double sign = (ref.order - j) % 2 == 0 ? 1.0 : -1.0;
      grad.segment(it->second * dim, dim) +=
          sign * Binomial(ref.order, j) * g;
    }
  }
  return grad;
}

}  // namespace occluded
