#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "nem/io.hpp"

using namespace nem;
using nem::io::json;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "nem_io_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("contour JSON round-trip is bit-exact") {
  const Contour c("blob", {{0.1, 0.2}, {1.0 / 3.0, 0.0}, {1e-17, 2.5}}, true,
                  {{"velocity", 0.7}, {"w", std::vector<double>{1, 2, 3}}});
  const Contour back = io::contour_from_json(json::parse(io::contour_to_json(c).dump()));
  CHECK(back == c);

  TempDir dir;
  io::save_contour(dir.path / "c.json", c);
  CHECK(io::load_contour(dir.path / "c.json") == c);
}

TEST_CASE("malformed contour documents") {
  CHECK_THROWS_AS(io::contour_from_json(json::parse(R"({"name":"a"})")), io::FormatError);
  CHECK_THROWS_AS(io::contour_from_json(json::parse(R"({"name":"a","points":[[0,0],[1]]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::contour_from_json(json::parse(R"({"name":"a","points":[[0,0],[1,0]]})")),
                  io::FormatError);
  CHECK_THROWS_AS(
      io::contour_from_json(json::parse(R"({"name":"a","points":[[0,0],[1,0],[1,1]],"attrs":{"k":"x"}})")),
      io::FormatError);
  CHECK_THROWS_AS(io::contour_from_json(json::parse(R"({"name":3,"points":[[0,0],[1,0],[1,1]]})")),
                  io::FormatError);

  TempDir dir;
  std::ofstream(dir.path / "bad.json") << "{ not json";
  CHECK_THROWS_AS(io::load_contour(dir.path / "bad.json"), io::FormatError);
  CHECK_THROWS_AS(io::load_contour(dir.path / "missing.json"), std::runtime_error);
}

TEST_CASE("cost model documents") {
  const auto cm = io::cost_model_from_json(json::parse(
      R"({"ground":"angular-squared","modulus":{"kind":"constant","c":2.0},
          "stretch":{"kind":"feature-scaled","r0":0.5,"r1":2,"feature":"speed"}})"));
  CHECK(cm.ground.kind == GroundKind::AngularSquared);
  CHECK(cm.modulus.c == 2.0);
  CHECK(cm.stretch.kind == StretchKind::FeatureScaled);
  CHECK(cm.stretch.r1 == 2.0);
  CHECK(cm.stretch.feature == "speed");

  const auto sum = io::cost_model_from_json(
      json::parse(R"({"ground":"scalar-squared","modulus":{"kind":"scalar-sum"},"stretch":{"kind":"constant","r":0.25}})"));
  CHECK(sum.modulus.kind == ModulusKind::ScalarSum);
  CHECK(sum.stretch.r == 0.25);

  CostModel pos;
  pos.stretch.kind = StretchKind::Position;
  pos.stretch.table = {2, 3, {1, 2, 3, 4, 5, 6}};
  const auto back = io::cost_model_from_json(io::cost_model_to_json(pos));
  CHECK(back.stretch.table.values == pos.stretch.table.values);
  CHECK(back.stretch.table.cols == 3);

  for (const auto& cmx : {cm, sum}) {
    const auto again = io::cost_model_from_json(io::cost_model_to_json(cmx));
    CHECK(io::cost_model_to_json(again) == io::cost_model_to_json(cmx));
  }

  CHECK_THROWS_AS(io::cost_model_from_json(json::parse(R"({"ground":"manhattan"})")), io::FormatError);
  CHECK_THROWS_AS(io::cost_model_from_json(json::parse(R"({"modulus":{"kind":"weird"}})")), io::FormatError);
  CHECK_THROWS_AS(io::cost_model_from_json(json::parse(R"({"stretch":{"kind":"constant","r":-1}})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::cost_model_from_json(json::parse(R"({"modulus":{"kind":"constant","c":0.5}})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::cost_model_from_json(json::parse("[1,2]")), io::FormatError);
}

TEST_CASE("shape specs") {
  ShapeSpec s;
  s.name = "e";
  s.kind = ShapeKind::Superellipse;
  s.exponent = 3.5;
  s.center = {1, 2};
  s.attrs["velocity"] = 0.3;
  const ShapeSpec back = io::shape_spec_from_json(io::shape_spec_to_json(s));
  CHECK(generate_shape(back) == generate_shape(s));
  CHECK_THROWS_AS(io::shape_spec_from_json(json::parse(R"({"name":"x","kind":"blob"})")), io::FormatError);
  CHECK_THROWS_AS(io::shape_spec_from_json(json::parse(R"({"kind":"circle"})")), io::FormatError);
  CHECK_THROWS_AS(io::shape_spec_from_json(json::parse(R"({"name":"x","kind":"circle","center":[1]})")),
                  io::FormatError);
  CHECK_THROWS_AS(io::shape_spec_from_json(json::parse(R"({"name":"x","kind":"circle","radius":"big"})")),
                  io::FormatError);
}

TEST_CASE("manifests resolve files relative to themselves") {
  TempDir dir;
  std::filesystem::create_directories(dir.path / "shapes");
  io::save_contour(dir.path / "shapes" / "tri.json", Contour("tri", {{0, 0}, {1, 0}, {0, 1}}));
  io::write_text_file(dir.path / "m.json", R"({
    "resample": 12, "cyclic": true,
    "model": {"ground": "angular-abs", "stretch": {"kind": "constant", "r": 0.5}},
    "shapes": [{"name": "c", "kind": "circle"}, {"file": "shapes/tri.json"}]})");
  const auto m = io::load_manifest(dir.path / "m.json");
  CHECK(m.resample == 12);
  CHECK(m.cyclic);
  CHECK(m.model.stretch.r == 0.5);
  REQUIRE(m.items.size() == 2);
  CHECK(std::holds_alternative<ShapeSpec>(m.items[0]));
  CHECK(std::get<Contour>(m.items[1]).name() == "tri");

  CHECK_THROWS_AS(io::manifest_from_json(json::parse(R"({"resample": 12})"), dir.path), io::FormatError);
}

TEST_CASE("report documents") {
  const FeatureSequence x({0.0, 1.5707963267948966});
  const FeatureSequence y({0.0, 1.5707963267948966, 1.5707963267948966});
  const auto doc = io::distance_report_to_json(nem::nem(x, y));
  CHECK(doc["total"].get<double>() == 1.0);
  CHECK(doc["mapping"].size() == 3);
  CHECK(doc["m"] == 2);

  AuditReport a;
  a.max_ratio = 1.25;
  a.violations.push_back({"a", "b", "c", 3.0, 2.0, 1.5});
  const auto audit = io::audit_report_to_json(a);
  CHECK(audit["passed"] == false);
  CHECK(audit["max_ratio"] == 1.25);
  CHECK(audit["bound"].is_null());
  CHECK(audit["violations"][0]["y"] == "b");
}
