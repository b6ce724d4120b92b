#include "nem/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace nem::io {

namespace {

template <class T>
T get_field(const json& doc, const char* key, const char* context) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw FormatError(std::string(context) + ": missing field '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string(context) + ": field '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& doc, const char* key, T fallback, const char* context) {
  if (!doc.contains(key)) return fallback;
  return get_field<T>(doc, key, context);
}

json witness_json(const TripleWitness& w) {
  return {{"x", w.x}, {"y", w.y}, {"z", w.z}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"ratio", w.ratio}};
}

json counterexamples_json(const std::vector<PairCounterexample>& list) {
  json out = json::array();
  for (const auto& c : list) out.push_back({{"x", c.x}, {"y", c.y}, {"value", c.value}});
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json contour_to_json(const Contour& c) {
  json points = json::array();
  for (const Point2 p : c.points()) points.push_back({p.x, p.y});
  json attrs = json::object();
  for (const auto& [key, value] : c.attrs()) {
    std::visit([&](const auto& v) { attrs[key] = v; }, value);
  }
  return {{"name", c.name()}, {"closed", c.closed()}, {"points", points}, {"attrs", attrs}};
}

Contour contour_from_json(const json& doc) {
  constexpr const char* ctx = "contour";
  const auto name = get_field<std::string>(doc, "name", ctx);
  const bool closed = get_or<bool>(doc, "closed", true, ctx);
  if (!doc.contains("points") || !doc["points"].is_array()) {
    throw FormatError("contour: missing array 'points'");
  }
  std::vector<Point2> pts;
  for (const auto& p : doc["points"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw FormatError("contour: each point must be [x, y]");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  AttrMap attrs;
  if (doc.contains("attrs")) {
    if (!doc["attrs"].is_object()) throw FormatError("contour: 'attrs' must be an object");
    for (const auto& [key, value] : doc["attrs"].items()) {
      if (value.is_number()) {
        attrs.emplace(key, value.get<double>());
      } else if (value.is_array() &&
                 std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
        attrs.emplace(key, value.get<std::vector<double>>());
      } else {
        throw FormatError("contour: attribute '" + key + "' must be a number or a list of numbers");
      }
    }
  }
  try {
    return Contour(name, std::move(pts), closed, std::move(attrs));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("contour: ") + e.what());
  }
}

void save_contour(const std::filesystem::path& path, const Contour& c) {
  write_text_file(path, contour_to_json(c).dump(2) + "\n");
}

Contour load_contour(const std::filesystem::path& path) {
  try {
    return contour_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json cost_model_to_json(const CostModel& cm) {
  json doc;
  switch (cm.ground.kind) {
    case GroundKind::AngularAbs: doc["ground"] = "angular-abs"; break;
    case GroundKind::AngularSquared: doc["ground"] = "angular-squared"; break;
    case GroundKind::ScalarSquared:
      doc["ground"] = "scalar-squared";
      doc["ground_feature"] = cm.ground.feature;
      break;
  }
  if (cm.modulus.kind == ModulusKind::Constant) {
    doc["modulus"] = {{"kind", "constant"}, {"c", cm.modulus.c}};
  } else {
    doc["modulus"] = {{"kind", "scalar-sum"}, {"feature", cm.modulus.feature}};
  }
  switch (cm.stretch.kind) {
    case StretchKind::Constant:
      doc["stretch"] = {{"kind", "constant"}, {"r", cm.stretch.r}};
      break;
    case StretchKind::FeatureScaled:
      doc["stretch"] = {{"kind", "feature-scaled"},
                        {"r0", cm.stretch.r0},
                        {"r1", cm.stretch.r1},
                        {"feature", cm.stretch.feature}};
      break;
    case StretchKind::Position:
      doc["stretch"] = {{"kind", "position"},
                        {"rows", cm.stretch.table.rows},
                        {"cols", cm.stretch.table.cols},
                        {"values", cm.stretch.table.values}};
      break;
  }
  return doc;
}

CostModel cost_model_from_json(const json& doc) {
  constexpr const char* ctx = "cost model";
  if (!doc.is_object()) throw FormatError("cost model must be a JSON object");
  CostModel cm;

  const auto ground = get_or<std::string>(doc, "ground", "angular-abs", ctx);
  if (ground == "angular-abs") {
    cm.ground.kind = GroundKind::AngularAbs;
  } else if (ground == "angular-squared") {
    cm.ground.kind = GroundKind::AngularSquared;
  } else if (ground == "scalar-squared") {
    cm.ground.kind = GroundKind::ScalarSquared;
    cm.ground.feature = get_or<std::string>(doc, "ground_feature", "value", ctx);
  } else {
    throw FormatError("cost model: unknown ground '" + ground + "'");
  }

  if (doc.contains("modulus")) {
    const json& m = doc["modulus"];
    const auto kind = get_field<std::string>(m, "kind", "modulus");
    if (kind == "constant") {
      cm.modulus.kind = ModulusKind::Constant;
      cm.modulus.c = get_or<double>(m, "c", 1.0, "modulus");
    } else if (kind == "scalar-sum") {
      cm.modulus.kind = ModulusKind::ScalarSum;
      cm.modulus.feature = get_or<std::string>(m, "feature", "value", "modulus");
    } else {
      throw FormatError("cost model: unknown modulus kind '" + kind + "'");
    }
  }

  if (doc.contains("stretch")) {
    const json& s = doc["stretch"];
    const auto kind = get_field<std::string>(s, "kind", "stretch");
    if (kind == "constant") {
      cm.stretch.kind = StretchKind::Constant;
      cm.stretch.r = get_field<double>(s, "r", "stretch");
    } else if (kind == "feature-scaled") {
      cm.stretch.kind = StretchKind::FeatureScaled;
      cm.stretch.r0 = get_field<double>(s, "r0", "stretch");
      cm.stretch.r1 = get_field<double>(s, "r1", "stretch");
      cm.stretch.feature = get_or<std::string>(s, "feature", "velocity", "stretch");
    } else if (kind == "position") {
      cm.stretch.kind = StretchKind::Position;
      cm.stretch.table.rows = get_field<std::size_t>(s, "rows", "stretch");
      cm.stretch.table.cols = get_field<std::size_t>(s, "cols", "stretch");
      cm.stretch.table.values = get_field<std::vector<double>>(s, "values", "stretch");
    } else {
      throw FormatError("cost model: unknown stretch kind '" + kind + "'");
    }
  }

  try {
    cm.validate();
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("cost model: ") + e.what());
  }
  return cm;
}

CostModel load_cost_model(const std::filesystem::path& path) {
  try {
    return cost_model_from_json(read_json_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

json shape_spec_to_json(const ShapeSpec& s) {
  json doc = {{"name", s.name},     {"kind", to_string(s.kind)}, {"radius", s.radius},
              {"a", s.a},           {"b", s.b},                  {"exponent", s.exponent},
              {"noise", s.noise},   {"sides", s.sides},          {"n", s.point_count},
              {"seed", s.seed},     {"rotation", s.rotation},    {"center", {s.center.x, s.center.y}}};
  json attrs = json::object();
  for (const auto& [key, value] : s.attrs) std::visit([&](const auto& v) { attrs[key] = v; }, value);
  doc["attrs"] = attrs;
  return doc;
}

ShapeSpec shape_spec_from_json(const json& doc) {
  constexpr const char* ctx = "shape";
  ShapeSpec s;
  s.name = get_field<std::string>(doc, "name", ctx);
  try {
    s.kind = parse_shape_kind(get_field<std::string>(doc, "kind", ctx));
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("shape: ") + e.what());
  }
  s.radius = get_or<double>(doc, "radius", s.radius, ctx);
  s.a = get_or<double>(doc, "a", s.a, ctx);
  s.b = get_or<double>(doc, "b", s.b, ctx);
  s.exponent = get_or<double>(doc, "exponent", s.exponent, ctx);
  s.noise = get_or<double>(doc, "noise", s.noise, ctx);
  s.sides = get_or<std::size_t>(doc, "sides", s.sides, ctx);
  s.point_count = get_or<std::size_t>(doc, "n", s.point_count, ctx);
  s.seed = get_or<std::uint64_t>(doc, "seed", s.seed, ctx);
  s.rotation = get_or<double>(doc, "rotation", s.rotation, ctx);
  if (doc.contains("center")) {
    const auto c = get_field<std::vector<double>>(doc, "center", ctx);
    if (c.size() != 2) throw FormatError("shape: 'center' must be [x, y]");
    s.center = {c[0], c[1]};
  }
  if (doc.contains("attrs")) {
    for (const auto& [key, value] : doc["attrs"].items()) {
      if (value.is_number()) {
        s.attrs.emplace(key, value.get<double>());
      } else if (value.is_array()) {
        s.attrs.emplace(key, value.get<std::vector<double>>());
      } else {
        throw FormatError("shape: attribute '" + key + "' must be a number or a list");
      }
    }
  }
  return s;
}

json distance_report_to_json(const DistanceReport& r) {
  json edges = json::array();
  for (const Edge& e : r.optimal_mapping.edges()) edges.push_back({e.i, e.j});
  return {{"total", r.total},
          {"stretch_part", r.stretch_part},
          {"distance_part", r.distance_part},
          {"m", r.m},
          {"n", r.n},
          {"mapping", edges}};
}

json audit_report_to_json(const AuditReport& r) {
  json violations = json::array();
  for (const auto& w : r.violations) violations.push_back(witness_json(w));
  return {{"passed", r.passed()},
          {"identity_ok", r.identity_ok},
          {"symmetry_ok", r.symmetry_ok},
          {"nonneg_ok", r.nonneg_ok},
          {"identity_failures", counterexamples_json(r.identity_failures)},
          {"symmetry_failures", counterexamples_json(r.symmetry_failures)},
          {"nonneg_failures", counterexamples_json(r.nonneg_failures)},
          {"triples_checked", r.triples_checked},
          {"max_ratio", optional_json(r.max_ratio)},
          {"worst", r.worst ? witness_json(*r.worst) : json(nullptr)},
          {"bound", optional_json(r.bound)},
          {"violations", violations}};
}

Manifest manifest_from_json(const json& doc, const std::filesystem::path& base_dir) {
  constexpr const char* ctx = "manifest";
  Manifest out;
  out.resample = get_or<std::size_t>(doc, "resample", out.resample, ctx);
  out.cyclic = get_or<bool>(doc, "cyclic", false, ctx);
  if (doc.contains("model")) out.model = cost_model_from_json(doc["model"]);
  if (!doc.contains("shapes") || !doc["shapes"].is_array()) {
    throw FormatError("manifest: missing array 'shapes'");
  }
  for (const auto& entry : doc["shapes"]) {
    if (entry.contains("file")) {
      std::filesystem::path p = get_field<std::string>(entry, "file", ctx);
      if (p.is_relative()) p = base_dir / p;
      out.items.emplace_back(load_contour(p));
    } else {
      out.items.emplace_back(shape_spec_from_json(entry));
    }
  }
  return out;
}

Manifest load_manifest(const std::filesystem::path& path) {
  return manifest_from_json(read_json_file(path), path.parent_path());
}

}  // namespace nem::io
