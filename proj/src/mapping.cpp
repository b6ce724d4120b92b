#include "nem/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nem {

Mapping::Mapping(std::size_t m, std::size_t n, std::vector<Edge> edges)
    : m_(m), n_(n), edges_(std::move(edges)) {
  if (m_ == 0 || n_ == 0) throw std::invalid_argument("mapping dimensions must be positive");
  if (edges_.empty()) throw std::invalid_argument("mapping must contain at least one edge");
  for (const Edge& e : edges_) {
    if (e.i < 1 || e.i > m_ || e.j < 1 || e.j > n_) {
      throw std::invalid_argument("edge <" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                                  "> outside " + std::to_string(m_) + " x " + std::to_string(n_));
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("mapping contains duplicate edges");
  }
}

bool Mapping::contains(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

Mapping Mapping::transposed() const {
  std::vector<Edge> flipped;
  flipped.reserve(edges_.size());
  for (const Edge& e : edges_) flipped.push_back({e.j, e.i});
  return Mapping(n_, m_, std::move(flipped));
}

Mapping Mapping::diagonal(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t k = 1; k <= n; ++k) edges.push_back({k, k});
  return Mapping(n, n, std::move(edges));
}

ValidityReport validate_mapping(const Mapping& mapping) {
  ValidityReport report;
  std::vector<bool> row(mapping.m() + 1, false);
  std::vector<bool> col(mapping.n() + 1, false);
  for (const Edge& e : mapping.edges()) {
    row[e.i] = true;
    col[e.j] = true;
  }
  for (std::size_t i = 1; i <= mapping.m(); ++i) {
    if (!row[i]) report.missing_first_components.push_back(i);
  }
  for (std::size_t j = 1; j <= mapping.n(); ++j) {
    if (!col[j]) report.missing_second_components.push_back(j);
  }
  const auto& edges = mapping.edges();
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      // lexicographic order gives edges[a].i <= edges[b].i
      if (edges[a].i < edges[b].i && edges[a].j > edges[b].j) {
        report.crossing_pairs.emplace_back(edges[a], edges[b]);
      }
    }
  }
  return report;
}

namespace {

void require_valid(const Mapping& mapping, const char* op) {
  if (!validate_mapping(mapping).valid()) {
    throw std::invalid_argument(std::string(op) + " requires a valid mapping");
  }
}

}  // namespace

bool is_minimal(const Mapping& mapping) {
  require_valid(mapping, "is_minimal");
  std::vector<std::size_t> row(mapping.m() + 1, 0);
  std::vector<std::size_t> col(mapping.n() + 1, 0);
  for (const Edge& e : mapping.edges()) {
    ++row[e.i];
    ++col[e.j];
  }
  return std::all_of(mapping.edges().begin(), mapping.edges().end(),
                     [&](const Edge& e) { return row[e.i] == 1 || col[e.j] == 1; });
}

std::vector<Edge> stretch_edges(const Mapping& mapping) {
  require_valid(mapping, "stretch_edges");
  std::vector<Edge> out;
  for (const Edge& e : mapping.edges()) {
    const bool above = e.i > 1 && mapping.contains({e.i - 1, e.j});
    const bool left = e.j > 1 && mapping.contains({e.i, e.j - 1});
    if (above || left) out.push_back(e);
  }
  return out;
}

void for_each_minimal_mapping(std::size_t m, std::size_t n,
                              const std::function<void(const Mapping&)>& visit, std::size_t cap) {
  if (m == 0 || n == 0) throw std::invalid_argument("mapping dimensions must be positive");
  if (m > cap || n > cap) {
    throw std::invalid_argument("enumeration limited to " + std::to_string(cap) + " x " +
                                std::to_string(cap));
  }
  std::vector<Edge> path{{1, 1}};
  std::function<void()> extend = [&] {
    const Edge at = path.back();
    if (at.i == m && at.j == n) {
      visit(Mapping(m, n, path));
      return;
    }
    const Edge steps[] = {{at.i + 1, at.j + 1}, {at.i + 1, at.j}, {at.i, at.j + 1}};
    for (const Edge next : steps) {
      if (next.i > m || next.j > n) continue;
      path.push_back(next);
      extend();
      path.pop_back();
    }
  };
  extend();
}

std::vector<Mapping> enumerate_minimal_mappings(std::size_t m, std::size_t n, std::size_t cap) {
  std::vector<Mapping> out;
  for_each_minimal_mapping(m, n, [&](const Mapping& mp) { out.push_back(mp); }, cap);
  return out;
}

Subdivision::Subdivision(std::vector<double> breakpoints) : breakpoints_(std::move(breakpoints)) {
  if (breakpoints_.size() < 2) throw std::invalid_argument("subdivision needs at least 2 breakpoints");
  for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
    if (!std::isfinite(breakpoints_[k])) throw std::invalid_argument("breakpoints must be finite");
    if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
      throw std::invalid_argument("breakpoints must be strictly increasing");
    }
  }
}

std::vector<double> Subdivision::lengths() const {
  std::vector<double> out;
  out.reserve(pieces());
  for (std::size_t k = 0; k < pieces(); ++k) out.push_back(weight(k));
  return out;
}

Subdivision subdivide(std::size_t n, std::optional<std::vector<double>> breakpoints) {
  if (n == 0) throw std::invalid_argument("subdivision of an empty range");
  if (!breakpoints) {
    std::vector<double> unit(n + 1);
    for (std::size_t k = 0; k <= n; ++k) unit[k] = static_cast<double>(k);
    return Subdivision(std::move(unit));
  }
  if (breakpoints->empty() || breakpoints->front() != 1.0 ||
      breakpoints->back() != static_cast<double>(n)) {
    throw std::invalid_argument("breakpoints must start at 1 and end at n");
  }
  return Subdivision(std::move(*breakpoints));
}

MappingCost mapping_cost(const Mapping& mapping, const FeatureSequence& xs,
                         const FeatureSequence& ys, const CostModel& cm,
                         const Subdivision* x_division, const Subdivision* y_division) {
  if (mapping.m() != xs.size() || mapping.n() != ys.size()) {
    throw std::invalid_argument("mapping is " + std::to_string(mapping.m()) + " x " +
                                std::to_string(mapping.n()) + " but sequences are " +
                                std::to_string(xs.size()) + " x " + std::to_string(ys.size()));
  }
  if ((x_division && x_division->pieces() != xs.size()) ||
      (y_division && y_division->pieces() != ys.size())) {
    throw std::invalid_argument("subdivision piece count does not match sequence length");
  }
  require_features(cm, xs, ys);

  auto weight = [&](const Edge& e) {
    double w = 1.0;
    if (x_division) w *= x_division->weight(e.i - 1);
    if (y_division) w *= y_division->weight(e.j - 1);
    return w;
  };
  const bool weighted = x_division || y_division;

  MappingCost cost;
  for (const Edge& e : mapping.edges()) {
    const double b = evaluate_ground(cm, xs, e.i - 1, ys, e.j - 1);
    cost.distance_part += weighted ? b * weight(e) : b;
  }
  for (const Edge& e : stretch_edges(mapping)) {
    const double s = evaluate_sigma(cm, xs, e.i - 1, ys, e.j - 1);
    cost.stretch_part += weighted ? s * weight(e) : s;
  }
  cost.total = cost.stretch_part + cost.distance_part;
  return cost;
}

void write_mapping_text(std::ostream& out, const Mapping& mapping) {
  out << mapping.m() << ' ' << mapping.n() << '\n';
  for (const Edge& e : mapping.edges()) out << e.i << ' ' << e.j << '\n';
}

Mapping read_mapping_text(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  auto parse_pair = [&](const char* what) {
    std::istringstream ss(line);
    long long a = 0;
    long long b = 0;
    std::string rest;
    if (!(ss >> a >> b) || (ss >> rest) || a < 1 || b < 1) {
      throw std::runtime_error(std::string("malformed mapping ") + what + ": '" + line + "'");
    }
    return std::pair<std::size_t, std::size_t>(static_cast<std::size_t>(a),
                                               static_cast<std::size_t>(b));
  };

  if (!next_line()) throw std::runtime_error("mapping text is empty");
  const auto [m, n] = parse_pair("header");
  std::vector<Edge> edges;
  while (next_line()) {
    const auto [i, j] = parse_pair("edge");
    edges.push_back({i, j});
  }
  return Mapping(m, n, std::move(edges));
}

}  // namespace nem
