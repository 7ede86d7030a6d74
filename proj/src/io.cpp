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

#include "occluded/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "occluded/error.hpp"

namespace occluded {
namespace {

using Json = nlohmann::ordered_json;
constexpr std::string_view kModule = "io";
constexpr int kSvgSamples = 256;

[[noreturn]] void ParseFail(const std::string& message) {
  throw Error(ErrorCode::kParse, kModule, message);
}

const Json& Field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    ParseFail(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

Json PointToJson(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p[i]);
  return a;
}

Json PointsToJson(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(PointToJson(p));
  return a;
}

Point PointFromJson(const Json& j, int dim) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    ParseFail("expected a point with " + std::to_string(dim) + " coordinates");
  }
  Point p(dim);
  for (int i = 0; i < dim; ++i) {
    if (!j[i].is_number()) ParseFail("point coordinates must be numbers");
    p[i] = j[i].get<double>();
  }
  return p;
}

std::vector<Point> PointsFromJson(const Json& j, int dim) {
  if (!j.is_array()) ParseFail("expected an array of points");
  std::vector<Point> pts;
  for (const auto& e : j) pts.push_back(PointFromJson(e, dim));
  return pts;
}

std::vector<double> NumbersFromJson(const Json& j) {
  if (!j.is_array()) ParseFail("expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) {
    if (!e.is_number()) ParseFail("expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

int IntFromJson(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number_integer()) {
    ParseFail(std::string("field \"") + key + "\" must be an integer");
  }
  return v.get<int>();
}

double DoubleFromJson(const Json& j, const char* key) {
  const Json& v = Field(j, key);
  if (!v.is_number()) {
    ParseFail(std::string("field \"") + key + "\" must be a number");
  }
  return v.get<double>();
}

Json CurveToJson(const CurveSpec& c) {
  Json j;
  j["degree"] = c.degree;
  j["knots"] = c.knots;
  j["points"] = PointsToJson(c.points);
  return j;
}

CurveSpec CurveFromJson(const Json& j, int dim) {
  CurveSpec c;
  c.degree = IntFromJson(j, "degree");
  c.points = PointsFromJson(Field(j, "points"), dim);
  if (j.contains("knots")) {
    c.knots = NumbersFromJson(j.at("knots"));
  } else {
    // Uniform clamped knots for the given point count.
    const int pieces = static_cast<int>(c.points.size()) - c.degree;
    c.knots = KnotVector::Uniform(c.degree, std::max(pieces, 1)).knots();
  }
  return c;
}

int DimFromJson(const Json& j) {
  const int dim = IntFromJson(j, "dim");
  if (dim != 2 && dim != 3) ParseFail("dim must be 2 or 3");
  return dim;
}

void CheckVersion(const Json& j) {
  if (j.contains("version") && IntFromJson(j, "version") != kFileVersion) {
    ParseFail("unsupported file version " +
              std::to_string(j.at("version").get<int>()));
  }
}

template <typename F>
auto Guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    ParseFail(e.what());
  }
}

Json TiesToJson(const std::vector<CoordinateTie>& ties) {
  Json a = Json::array();
  for (const auto& t : ties) {
    Json j;
    j["point"] = t.point;
    j["coord"] = std::string(1, "xyz"[t.coord]);
    j["prev_weight"] = t.prev_weight;
    j["next_weight"] = t.next_weight;
    a.push_back(std::move(j));
  }
  return a;
}

std::vector<CoordinateTie> TiesFromJson(const Json& a) {
  if (!a.is_array()) ParseFail("ties must be an array");
  std::vector<CoordinateTie> ties;
  for (const auto& j : a) {
    const std::string coord = Field(j, "coord").get<std::string>();
    const auto pos = std::string_view("xyz").find(coord);
    if (coord.size() != 1 || pos == std::string_view::npos) {
      ParseFail("tie coordinate must be x, y or z");
    }
    ties.push_back({.point = IntFromJson(j, "point"),
                    .coord = static_cast<int>(pos),
                    .prev_weight = DoubleFromJson(j, "prev_weight"),
                    .next_weight = DoubleFromJson(j, "next_weight")});
  }
  return ties;
}

TangentCase CaseFromString(const std::string& s) {
  for (auto c : {TangentCase::kBaseline, TangentCase::kCase1,
                 TangentCase::kCase2}) {
    if (ToString(c) == s) return c;
  }
  ParseFail("unknown case \"" + s + "\"");
}

Realization RealizationFromString(const std::string& s) {
  for (auto r : {Realization::kOnePieceCubic, Realization::kTwoPieceCubic,
                 Realization::kOnePieceQuartic}) {
    if (ToString(r) == s) return r;
  }
  ParseFail("unknown realization \"" + s + "\"");
}

Json PlanToJson(const PlanEcho& p) {
  Json j;
  j["source"] = p.source;
  j["degree"] = p.topology.degree;
  j["pieces"] = p.topology.pieces;
  j["case"] = p.tangent_case ? Json(std::string(ToString(*p.tangent_case)))
                             : Json(nullptr);
  j["ties"] = TiesToJson(p.ties);
  if (p.planned) {
    Json k;
    k["left_inflections"] = p.planned->left_inflections;
    k["right_inflections"] = p.planned->right_inflections;
    k["target_inflections"] = p.planned->target_inflections;
    k["gap"] = p.planned->gap;
    k["window_clamped"] = p.planned->window_clamped;
    k["realization"] = std::string(ToString(p.planned->realization));
    j["planner"] = std::move(k);
  }
  return j;
}

PlanEcho PlanFromJson(const Json& j) {
  PlanEcho p;
  p.source = Field(j, "source").get<std::string>();
  p.topology = {IntFromJson(j, "degree"), IntFromJson(j, "pieces")};
  if (!Field(j, "case").is_null()) {
    p.tangent_case = CaseFromString(j.at("case").get<std::string>());
  }
  p.ties = TiesFromJson(Field(j, "ties"));
  if (j.contains("planner")) {
    const Json& k = j.at("planner");
    TopologyPlan t;
    t.left_inflections = IntFromJson(k, "left_inflections");
    t.right_inflections = IntFromJson(k, "right_inflections");
    t.target_inflections = IntFromJson(k, "target_inflections");
    t.gap = DoubleFromJson(k, "gap");
    t.window_clamped = Field(k, "window_clamped").get<bool>();
    t.realization =
        RealizationFromString(Field(k, "realization").get<std::string>());
    t.tangent_case = p.tangent_case.value_or(TangentCase::kBaseline);
    t.ties = p.ties;
    p.planned = t;
  }
  return p;
}

Json TransformToJson(const RigidTransform& t) {
  Json rot = Json::array();
  for (Eigen::Index r = 0; r < t.rotation().rows(); ++r) {
    rot.push_back(PointToJson(t.rotation().row(r).transpose()));
  }
  return {{"rotation", rot}, {"translation", PointToJson(t.translation())}};
}

Json SceneToJson(const SceneFile& scene) {
  Json j;
  j["version"] = scene.version;
  j["dim"] = scene.dim;
  j["left"] = CurveToJson(scene.left);
  j["right"] = CurveToJson(scene.right);
  if (scene.solution) {
    j["solution"] = {{"degree", scene.solution->degree},
                     {"pieces", scene.solution->pieces}};
  }
  j["lagrangian"] = scene.lagrangian;
  return j;
}

// --- SVG -------------------------------------------------------------------

struct Panel {
  int ax = 0;
  int ay = 1;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

BSplineCurve ToCurve(const CurveSpec& spec) {
  return BSplineCurve(KnotVector(spec.knots, spec.degree), spec.points);
}

CurveSpec FromCurve(const BSplineCurve& curve) {
  return {curve.degree(), curve.knots().knots(), curve.points()};
}

Scene ToScene(const SceneFile& file) {
  BSplineCurve left = ToCurve(file.left);
  BSplineCurve right = ToCurve(file.right);
  if (left.dim() != file.dim || right.dim() != file.dim) {
    throw Error(ErrorCode::kParse, kModule, "points do not match \"dim\"");
  }
  return Scene(std::move(left), std::move(right), file.solution);
}

SceneFile ParseSceneFile(std::string_view json_text) {
  return Guarded([&] {
    const Json j = Json::parse(json_text);
    CheckVersion(j);
    SceneFile f;
    f.dim = DimFromJson(j);
    f.left = CurveFromJson(Field(j, "left"), f.dim);
    f.right = CurveFromJson(Field(j, "right"), f.dim);
    if (j.contains("solution") && !j.at("solution").is_null()) {
      const Json& s = j.at("solution");
      f.solution = Topology{IntFromJson(s, "degree"), IntFromJson(s, "pieces")};
    }
    if (j.contains("lagrangian")) {
      f.lagrangian = j.at("lagrangian").get<std::string>();
    }
    return f;
  });
}

std::string WriteSceneFile(const SceneFile& scene) {
  return SceneToJson(scene).dump(2) + "\n";
}

std::string WriteNormalizedSceneFile(const SceneFile& normalized,
                                     const RigidTransform& transform) {
  Json j = SceneToJson(normalized);
  j["transform"] = TransformToJson(transform);
  return j.dump(2) + "\n";
}

std::string WritePlanFile(const PlanEcho& plan) {
  return PlanToJson(plan).dump(2) + "\n";
}

std::string WriteSolutionFile(const SolutionFile& s) {
  Json j;
  j["version"] = s.version;
  j["dim"] = s.dim;
  j["solution"] = {{"degree", s.topology.degree},
                   {"pieces", s.topology.pieces},
                   {"knots", s.knots}};
  j["lagrangian"] = s.lagrangian;
  j["boundary_form"] =
      s.form == BoundaryForm::kLiteral ? "literal" : "tangent_line";
  j["orientation_valid"] = s.orientation_valid;
  j["alpha"] = s.alpha;
  j["beta"] = s.beta;
  j["unknowns"] = s.unknowns;
  j["residual_norm"] = s.residual_norm;
  j["iterations"] = s.iterations;
  j["start_used"] = s.start_used;
  j["normalized_points"] = PointsToJson(s.normalized_points);
  j["original_points"] = PointsToJson(s.original_points);
  j["plan"] = PlanToJson(s.plan);
  j["transform"] = TransformToJson(s.transform);
  return j.dump(2) + "\n";
}

SolutionFile ParseSolutionFile(std::string_view json_text) {
  return Guarded([&] {
    const Json j = Json::parse(json_text);
    CheckVersion(j);
    SolutionFile s;
    s.dim = DimFromJson(j);
    const Json& sol = Field(j, "solution");
    s.topology = {IntFromJson(sol, "degree"), IntFromJson(sol, "pieces")};
    s.knots = NumbersFromJson(Field(sol, "knots"));
    s.lagrangian = Field(j, "lagrangian").get<std::string>();
    s.form = Field(j, "boundary_form").get<std::string>() == "literal"
                 ? BoundaryForm::kLiteral
                 : BoundaryForm::kTangentLine;
    s.orientation_valid = Field(j, "orientation_valid").get<bool>();
    s.alpha = DoubleFromJson(j, "alpha");
    s.beta = DoubleFromJson(j, "beta");
    s.unknowns = NumbersFromJson(Field(j, "unknowns"));
    s.residual_norm = DoubleFromJson(j, "residual_norm");
    s.iterations = IntFromJson(j, "iterations");
    s.start_used = IntFromJson(j, "start_used");
    s.normalized_points = PointsFromJson(Field(j, "normalized_points"), s.dim);
    s.original_points = PointsFromJson(Field(j, "original_points"), s.dim);
    s.plan = PlanFromJson(Field(j, "plan"));
    const Json& t = Field(j, "transform");
    const std::vector<Point> rows = PointsFromJson(Field(t, "rotation"), s.dim);
    if (static_cast<int>(rows.size()) != s.dim) {
      ParseFail("rotation must be square");
    }
    Eigen::MatrixXd r(s.dim, s.dim);
    for (int i = 0; i < s.dim; ++i) r.row(i) = rows[i].transpose();
    s.transform =
        RigidTransform(r, PointFromJson(Field(t, "translation"), s.dim));
    return s;
  });
}

CurveSpec ParseCurveFile(std::string_view json_text) {
  return Guarded([&] {
    const Json j = Json::parse(json_text);
    if (j.contains("original_points")) {
      const SolutionFile s = ParseSolutionFile(json_text);
      return CurveSpec{s.topology.degree, s.knots, s.original_points};
    }
    const Json& pts = Field(j, "points");
    int dim = 2;
    if (j.contains("dim")) {
      dim = DimFromJson(j);
    } else if (pts.is_array() && !pts.empty() && pts[0].is_array()) {
      dim = static_cast<int>(pts[0].size());
    }
    return CurveFromJson(j, dim);
  });
}

std::string WriteCsv(const BSplineCurve& curve, int count) {
  const std::vector<Point> samples = SamplePolyline(curve, count);
  std::string out = curve.dim() == 2 ? "t,x,y\n" : "t,x,y,z\n";
  char buf[64];
  for (int s = 0; s < count; ++s) {
    const double t = s == count - 1 ? 1.0 : static_cast<double>(s) / (count - 1);
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    out += buf;
    for (Eigen::Index c = 0; c < samples[s].size(); ++c) {
      std::snprintf(buf, sizeof(buf), ",%.17g", samples[s][c]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string RenderSvg(const Scene& scene,
                      const std::optional<BSplineCurve>& solution) {
  struct Item {
    const BSplineCurve* curve;
    const char* color;
  };
  std::vector<Item> items = {{&scene.left(), "black"},
                             {&scene.right(), "black"}};
  if (solution) items.push_back({&*solution, "red"});

  std::vector<std::vector<Point>> samples;
  for (const auto& it : items) {
    samples.push_back(SamplePolyline(*it.curve, kSvgSamples));
  }

  std::vector<Panel> panels = {{0, 1}};
  if (scene.dim() == 3) panels.push_back({0, 2});

  // Shared bounds over every sample and control point, per projection.
  std::vector<Eigen::Vector4d> bounds;  // min u, min v, max u, max v
  for (const auto& pn : panels) {
    Eigen::Vector4d b(std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity());
    auto grow = [&](const Point& p) {
      b[0] = std::min(b[0], p[pn.ax]);
      b[1] = std::min(b[1], p[pn.ay]);
      b[2] = std::max(b[2], p[pn.ax]);
      b[3] = std::max(b[3], p[pn.ay]);
    };
    for (const auto& s : samples) std::for_each(s.begin(), s.end(), grow);
    for (const auto& it : items) {
      for (const auto& p : it.curve->points()) grow(p);
    }
    bounds.push_back(b);
  }
  double width = 0.0;
  double height = 0.0;
  std::vector<double> margins;
  for (const auto& b : bounds) {
    double m = 0.05 * std::max(b[2] - b[0], b[3] - b[1]);
    if (m == 0.0) m = 1.0;
    margins.push_back(m);
    width += (b[2] - b[0]) + 2 * m;
    height = std::max(height, (b[3] - b[1]) + 2 * m);
  }

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "viewBox=\"0 0 " << Num(width) << " " << Num(height) << "\">\n";
  double x_offset = 0.0;
  for (std::size_t k = 0; k < panels.size(); ++k) {
    const Panel& pn = panels[k];
    const Eigen::Vector4d& b = bounds[k];
    const double m = margins[k];
    // SVG y grows downward.
    auto sx = [&](const Point& p) { return x_offset + p[pn.ax] - b[0] + m; };
    auto sy = [&](const Point& p) { return b[3] - p[pn.ay] + m; };
    svg << "<g>\n";
    for (const auto& it : items) {
      svg << "<polyline fill=\"none\" stroke=\"gray\" stroke-width=\""
          << Num(0.2 * m) << "\" stroke-dasharray=\"" << Num(m) << " "
          << Num(0.5 * m) << "\" points=\"";
      const auto& pts = it.curve->points();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        svg << (i ? " " : "") << Num(sx(pts[i])) << "," << Num(sy(pts[i]));
      }
      svg << "\"/>\n";
    }
    for (std::size_t c = 0; c < items.size(); ++c) {
      svg << "<path fill=\"none\" stroke=\"" << items[c].color
          << "\" stroke-width=\"" << Num(0.4 * m) << "\" d=\"";
      for (std::size_t i = 0; i < samples[c].size(); ++i) {
        svg << (i ? " L " : "M ") << Num(sx(samples[c][i])) << " "
            << Num(sy(samples[c][i]));
      }
      svg << "\"/>\n";
    }
    svg << "</g>\n";
    x_offset += (b[2] - b[0]) + 2 * m;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, kModule, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, kModule, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, kModule, "write failed for " + path);
}

}  // namespace occluded
