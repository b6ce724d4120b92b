#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nem/contour.hpp"

namespace nem {

/// Per-pair alignment cost B.
enum class GroundKind {
  AngularAbs,      ///< geodesic tangent-angle difference, in [0, pi]
  AngularSquared,  ///< square of the above
  ScalarSquared,   ///< (g(x) - g(y))^2 on a named scalar feature
};

struct GroundCost {
  GroundKind kind = GroundKind::AngularAbs;
  std::string feature = "value";  // ScalarSquared only
};

/// Relaxation modulus alpha attached to the ground cost.
enum class ModulusKind {
  Constant,   ///< alpha = c
  ScalarSum,  ///< alpha(x, y) = g(x) + g(y) + 2
};

struct Modulus {
  ModulusKind kind = ModulusKind::Constant;
  double c = 1.0;
  std::string feature = "value";  // ScalarSum only
};

enum class StretchKind {
  Constant,       ///< sigma = r
  FeatureScaled,  ///< sigma = r0 + r1 * |g(x) - g(y)|
  Position,       ///< sigma = table[i][j], indexed by element positions
};

/// Dense m x n table for StretchKind::Position, row-major.
struct PositionTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
};

struct StretchFn {
  StretchKind kind = StretchKind::Constant;
  double r = 1.0;
  double r0 = 1.0;
  double r1 = 1.0;
  std::string feature = "velocity";
  PositionTable table;
};

struct CostModel {
  GroundCost ground;
  Modulus modulus;
  StretchFn stretch;

  /// Throws std::invalid_argument when a parameter is out of range.
  void validate() const;

  static CostModel angular_constant(double r);
  static CostModel feature_scaled(double r0, double r1, std::string feature,
                                  GroundKind ground = GroundKind::AngularAbs);
};

/// Pointwise evaluations. Elements are addressed as (sequence, 0-based index).
/// Missing features raise std::invalid_argument.
double evaluate_ground(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                       const FeatureSequence& ys, std::size_t j);
double evaluate_sigma(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                      const FeatureSequence& ys, std::size_t j);
double evaluate_modulus(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                        const FeatureSequence& ys, std::size_t j);

/// Throws std::invalid_argument if the sequences lack a feature the model reads,
/// or if a position table does not cover (|xs|, |ys|).
void require_features(const CostModel& cm, const FeatureSequence& xs, const FeatureSequence& ys);

/// Row i of the ground-cost and stretch matrices, written into spans of |ys|.
void ground_row(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
                const FeatureSequence& ys, std::span<double> out);
void sigma_row(const CostModel& cm, const FeatureSequence& xs, std::size_t i,
               const FeatureSequence& ys, std::span<double> out);

}  // namespace nem
