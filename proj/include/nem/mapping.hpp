#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nem/contour.hpp"
#include "nem/cost_model.hpp"

namespace nem {

/// Correspondence <i, j> between element i of the first sequence and element
/// j of the second. Indices are 1-based.
struct Edge {
  std::size_t i = 1;
  std::size_t j = 1;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge set on the m x n index grid, kept in lexicographic order.
/// Construction rejects empty sets, out-of-range edges and duplicates.
class Mapping {
 public:
  Mapping(std::size_t m, std::size_t n, std::vector<Edge> edges);

  std::size_t m() const noexcept { return m_; }
  std::size_t n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool contains(Edge e) const;

  /// Swaps the roles of the two sequences.
  Mapping transposed() const;

  static Mapping diagonal(std::size_t n);

  friend bool operator==(const Mapping&, const Mapping&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<Edge> edges_;
};

struct ValidityReport {
  std::vector<std::size_t> missing_first_components;
  std::vector<std::size_t> missing_second_components;
  std::vector<std::pair<Edge, Edge>> crossing_pairs;

  bool valid() const noexcept {
    return missing_first_components.empty() && missing_second_components.empty() &&
           crossing_pairs.empty();
  }
};

/// Coverage of both index ranges plus every crossing pair
/// (<i, j'>, <i', j>) with i < i' and j < j'.
ValidityReport validate_mapping(const Mapping& mapping);

/// True iff no single edge can be dropped while staying valid. Dropping edges
/// never creates crossings, so this reduces to: every edge is the only cover
/// of its row or the only cover of its column. Throws on invalid input.
bool is_minimal(const Mapping& mapping);

/// Edges <i, j> whose neighbour <i-1, j> or <i, j-1> is also present.
/// Throws on invalid input.
std::vector<Edge> stretch_edges(const Mapping& mapping);

inline constexpr std::size_t kEnumerationCap = 7;

/// Calls visit for every minimal (m, n) mapping, i.e. every monotone lattice
/// path from (1,1) to (m,n) with unit right/up/diagonal steps. There are
/// Delannoy(m-1, n-1) of them. Throws std::invalid_argument above the cap.
void for_each_minimal_mapping(std::size_t m, std::size_t n,
                              const std::function<void(const Mapping&)>& visit,
                              std::size_t cap = kEnumerationCap);

std::vector<Mapping> enumerate_minimal_mappings(std::size_t m, std::size_t n,
                                                std::size_t cap = kEnumerationCap);

/// Strictly increasing breakpoints x_0 < x_1 < ... < x_n splitting an
/// interval into n pieces, one per sequence element. Element k (1-based) is
/// weighted by its piece length x_k - x_{k-1}.
class Subdivision {
 public:
  explicit Subdivision(std::vector<double> breakpoints);

  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  std::vector<double> lengths() const;
  /// Number of pieces (= elements covered).
  std::size_t pieces() const noexcept { return breakpoints_.size() - 1; }
  /// Length of the piece for 0-based element k.
  double weight(std::size_t k) const { return breakpoints_[k + 1] - breakpoints_[k]; }

 private:
  std::vector<double> breakpoints_;
};

/// Without breakpoints: the unit grid x_k = k, k = 0..n, so every piece has
/// length 1. Given breakpoints must run strictly increasing from 1 to n;
/// anything else throws std::invalid_argument.
Subdivision subdivide(std::size_t n, std::optional<std::vector<double>> breakpoints = std::nullopt);

struct MappingCost {
  double total = 0.0;
  double stretch_part = 0.0;
  double distance_part = 0.0;
};

/// distance_part sums B over every edge, stretch_part sums sigma over the
/// stretch edges; each term is scaled by the subdivision weights when given.
MappingCost mapping_cost(const Mapping& mapping, const FeatureSequence& xs,
                         const FeatureSequence& ys, const CostModel& cm,
                         const Subdivision* x_division = nullptr,
                         const Subdivision* y_division = nullptr);

/// Text form: header "m n", then one "i j" line per edge in lexicographic order.
void write_mapping_text(std::ostream& out, const Mapping& mapping);
Mapping read_mapping_text(std::istream& in);

}  // namespace nem
