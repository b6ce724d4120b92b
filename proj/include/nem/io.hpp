#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nem/contour.hpp"
#include "nem/cost_model.hpp"
#include "nem/elastic.hpp"
#include "nem/metric_audit.hpp"
#include "nem/retrieval.hpp"
#include "nem/shapes.hpp"

namespace nem::io {

using json = nlohmann::json;

/// Malformed documents: bad syntax, missing or mistyped fields, or content
/// that violates a domain invariant.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"name", "closed", "points": [[x, y], ...], "attrs": {"k": v | [v...]}}
json contour_to_json(const Contour& c);
Contour contour_from_json(const json& doc);
void save_contour(const std::filesystem::path& path, const Contour& c);
Contour load_contour(const std::filesystem::path& path);

// {"ground": "angular-abs", "modulus": {...}, "stretch": {...}}
json cost_model_to_json(const CostModel& cm);
CostModel cost_model_from_json(const json& doc);
CostModel load_cost_model(const std::filesystem::path& path);

json shape_spec_to_json(const ShapeSpec& s);
ShapeSpec shape_spec_from_json(const json& doc);

json distance_report_to_json(const DistanceReport& r);
json audit_report_to_json(const AuditReport& r);

/// Corpus manifest:
///   {"resample": 32, "cyclic": false, "model": {...},
///    "shapes": [ {"name": "e1", "kind": "ellipse", ...} | {"file": "path.json"} ]}
/// Relative file paths resolve against the manifest's directory.
struct Manifest {
  std::vector<CorpusItem> items;
  CostModel model;
  std::size_t resample = 32;
  bool cyclic = false;
};
Manifest load_manifest(const std::filesystem::path& path);
Manifest manifest_from_json(const json& doc, const std::filesystem::path& base_dir);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace nem::io
