#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nem/contour.hpp"
#include "nem/cost_model.hpp"
#include "nem/metric_audit.hpp"
#include "nem/shapes.hpp"

namespace nem {

struct CorpusEntry {
  Contour contour;
  FeatureSequence features;
};

/// Either a shape to generate or a contour that was already loaded.
using CorpusItem = std::variant<ShapeSpec, Contour>;

struct Corpus {
  std::vector<CorpusEntry> entries;
  CostModel model;
  std::size_t resample_n = 0;
  bool cyclic = false;

  std::vector<std::string> names() const;
};

/// Generates or takes each contour, resamples it uniformly to resample_n and
/// derives its feature sequence. Rejects duplicate names and resample_n < 3.
Corpus build_corpus(const std::vector<CorpusItem>& items, const CostModel& model,
                    std::size_t resample_n, bool cyclic = false);

/// Preprocesses a query contour the same way corpus entries were.
FeatureSequence prepare_query(const Corpus& corpus, const Contour& query);

/// NEM_sigma under the corpus model (cyclic when the corpus asks for it).
double corpus_distance(const Corpus& corpus, const FeatureSequence& a, const FeatureSequence& b);

struct DistanceMatrix {
  std::vector<std::string> names;
  std::vector<double> values;  // row-major, names.size() squared

  std::size_t size() const noexcept { return names.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * names.size() + j]; }
};

/// Pairwise NEM_sigma over the corpus. Unordered pairs are computed once and
/// mirrored; the diagonal is zero. threads = 0 uses the hardware concurrency.
/// Output is identical for every thread count.
DistanceMatrix distance_matrix(const Corpus& corpus, unsigned threads = 0);

struct Neighbor {
  std::string name;
  double distance = 0.0;
};

/// k nearest corpus entries, ascending by distance, ties broken by name.
std::vector<Neighbor> knn_query(const Corpus& corpus, const Contour& query, std::size_t k);

/// CSV: header "name,<n1>,<n2>,...", then "<ni>,v1,v2,...". Values use 17
/// significant digits. Loading rejects ragged rows, name mismatches and
/// asymmetric matrices.
void save_matrix(const std::filesystem::path& path, const DistanceMatrix& m);
DistanceMatrix load_matrix(const std::filesystem::path& path);
std::string matrix_to_csv(const DistanceMatrix& m);
DistanceMatrix matrix_from_csv(const std::string& text);

// Robot scene ---------------------------------------------------------------

struct Robot {
  ShapeSpec shape;  ///< generated at the origin, then moved to (x, 0)
  double x = 0.0;
  double velocity = 0.0;  ///< along the line; also the stretch feature
};

struct SceneSpec {
  std::array<Robot, 3> robots;  ///< green, blue, purple
  double t = 0.0;
  double r0 = 1.0;
  double r1 = 1.0;
  std::size_t gap_samples = 256;
  std::size_t match_samples = 32;

  /// Three unit circles at x = 0, 4, 8 with the given velocities.
  static SceneSpec unit_circles(std::array<double, 3> velocities = {0.0, 0.0, 0.0}, double t = 0.0);
};

struct RobotReport {
  std::vector<Contour> shapes;  ///< positioned at time t
  PairTable gap;                ///< minimal boundary distance
  PairTable nem;                ///< NEM_sigma with velocity-scaled stretch
  AuditReport gap_audit;        ///< plain triangle inequality (theta = 1)
  AuditReport nem_sigma_audit;  ///< relaxed triangle with the theta surrogate
  std::optional<double> theta_hat;
  bool overlapping = false;
};

/// Minimal Euclidean distance between the two boundary point sets.
double boundary_gap(const Contour& a, const Contour& b);

/// True when either closed polygon contains a vertex of the other.
bool contours_overlap(const Contour& a, const Contour& b);

RobotReport robot_scenario(const SceneSpec& scene);

}  // namespace nem
