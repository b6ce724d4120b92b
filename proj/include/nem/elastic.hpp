#pragma once

#include <cstddef>

#include "nem/contour.hpp"
#include "nem/cost_model.hpp"
#include "nem/mapping.hpp"

namespace nem {

/// Optimal elastic match between two sequences.
struct DistanceReport {
  double total = 0.0;          ///< DP optimum
  double stretch_part = 0.0;   ///< sigma summed over the optimal mapping's stretch edges
  double distance_part = 0.0;  ///< B summed over the optimal mapping's edges
  Mapping optimal_mapping;
  std::size_t m = 0;
  std::size_t n = 0;
};

/// Minimum over all (m, n) mappings of stretch plus distance cost, via
///
///   T[1][1] = B(1,1)
///   T[i][j] = B(i,j) + min(T[i-1][j-1], T[i-1][j] + s(i,j), T[i][j-1] + s(i,j))
///
/// with out-of-grid predecessors omitted. The optimal mapping is recovered by
/// backtrace preferring the diagonal, then (i-1, j), then (i, j-1).
/// Throws std::invalid_argument on empty input or missing features.
DistanceReport nem_sigma(const FeatureSequence& xs, const FeatureSequence& ys, const CostModel& cm);

/// Same optimum as nem_sigma().total using O(n) memory and no backtrace.
double nem_sigma_total(const FeatureSequence& xs, const FeatureSequence& ys, const CostModel& cm);

/// Constant stretch penalty r with the angular ground cost.
DistanceReport nem_r(const FeatureSequence& xs, const FeatureSequence& ys, double r);

/// Unit stretch penalty with the angular ground cost.
DistanceReport nem(const FeatureSequence& xs, const FeatureSequence& ys);

/// Minimum of mapping_cost over every enumerated minimal mapping. Independent
/// of the DP; used as its oracle. Limited to kEnumerationCap per side.
double brute_force_nem_sigma(const FeatureSequence& xs, const FeatureSequence& ys,
                             const CostModel& cm, std::size_t cap = kEnumerationCap);

struct CyclicReport {
  DistanceReport report;
  std::size_t best_rotation = 0;  ///< ys rotated so element k comes first
};

/// Minimum over all cyclic rotations of ys; smallest rotation wins ties.
/// Both sequences must come from closed contours.
CyclicReport nem_sigma_cyclic(const FeatureSequence& xs, const FeatureSequence& ys,
                              const CostModel& cm);

}  // namespace nem
