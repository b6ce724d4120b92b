#include "nem/elastic.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nem/kernels.hpp"

namespace nem {

namespace {

void check_inputs(const FeatureSequence& xs, const FeatureSequence& ys, const CostModel& cm) {
  if (xs.empty() || ys.empty()) throw std::invalid_argument("elastic matching needs nonempty sequences");
  cm.validate();
  require_features(cm, xs, ys);
}

// Fills one DP row. `prev` is empty for the first row.
void fill_row(const kernels::KernelTable& k, std::span<const double> prev,
              std::span<const double> ground, std::span<const double> sigma,
              std::span<double> cand, std::span<double> row) {
  const std::size_t n = row.size();
  if (prev.empty()) {
    row[0] = ground[0];
    for (std::size_t j = 1; j < n; ++j) row[j] = ground[j] + (row[j - 1] + sigma[j]);
    return;
  }
  k.dp_candidates(prev, sigma, cand);
  row[0] = ground[0] + cand[0];
  for (std::size_t j = 1; j < n; ++j) row[j] = ground[j] + std::min(cand[j], row[j - 1] + sigma[j]);
}

}  // namespace

double nem_sigma_total(const FeatureSequence& xs, const FeatureSequence& ys, const CostModel& cm) {
  check_inputs(xs, ys, cm);
  const std::size_t m = xs.size();
  const std::size_t n = ys.size();
  const auto& k = kernels::active();

  std::vector<double> ground(n), sigma(n), cand(n), prev(n), cur(n);
  for (std::size_t i = 0; i < m; ++i) {
    ground_row(cm, xs, i, ys, ground);
    sigma_row(cm, xs, i, ys, sigma);
    fill_row(k, i == 0 ? std::span<const double>{} : std::span<const double>(prev), ground, sigma,
             cand, cur);
    std::swap(prev, cur);
  }
  return prev[n - 1];
}

DistanceReport nem_sigma(const FeatureSequence& xs, const FeatureSequence& ys, const CostModel& cm) {
  check_inputs(xs, ys, cm);
  const std::size_t m = xs.size();
  const std::size_t n = ys.size();
  const auto& k = kernels::active();

  std::vector<double> table(m * n);
  std::vector<double> ground(n), sigma(n), cand(n);
  auto row = [&](std::size_t i) { return std::span<double>(table).subspan(i * n, n); };
  for (std::size_t i = 0; i < m; ++i) {
    ground_row(cm, xs, i, ys, ground);
    sigma_row(cm, xs, i, ys, sigma);
    fill_row(k, i == 0 ? std::span<const double>{} : std::span<const double>(row(i - 1)), ground,
             sigma, cand, row(i));
  }
  auto at = [&](std::size_t i, std::size_t j) { return table[i * n + j]; };

  // Predecessor values are recomputed with the exact expressions used by the
  // fill, so the equality test below is exact.
  std::vector<Edge> path;
  path.reserve(m + n);
  std::size_t i = m - 1;
  std::size_t j = n - 1;
  path.push_back({i + 1, j + 1});
  while (i > 0 || j > 0) {
    if (i == 0) {
      --j;
    } else if (j == 0) {
      --i;
    } else {
      const double s = evaluate_sigma(cm, xs, i, ys, j);
      const double diag = at(i - 1, j - 1);
      const double up = at(i - 1, j) + s;
      const double left = at(i, j - 1) + s;
      const double best = std::min(std::min(diag, up), left);
      if (diag == best) {
        --i;
        --j;
      } else if (up == best) {
        --i;
      } else {
        --j;
      }
    }
    path.push_back({i + 1, j + 1});
  }
  std::reverse(path.begin(), path.end());

  Mapping mapping(m, n, std::move(path));
  const MappingCost parts = mapping_cost(mapping, xs, ys, cm);
  return DistanceReport{at(m - 1, n - 1), parts.stretch_part, parts.distance_part, std::move(mapping),
                        m, n};
}

DistanceReport nem_r(const FeatureSequence& xs, const FeatureSequence& ys, double r) {
  if (!(r >= 0.0)) throw std::invalid_argument("stretch penalty r must be >= 0");
  return nem_sigma(xs, ys, CostModel::angular_constant(r));
}

DistanceReport nem(const FeatureSequence& xs, const FeatureSequence& ys) { return nem_r(xs, ys, 1.0); }

double brute_force_nem_sigma(const FeatureSequence& xs, const FeatureSequence& ys,
                             const CostModel& cm, std::size_t cap) {
  check_inputs(xs, ys, cm);
  double best = std::numeric_limits<double>::infinity();
  for_each_minimal_mapping(
      xs.size(), ys.size(),
      [&](const Mapping& mp) { best = std::min(best, mapping_cost(mp, xs, ys, cm).total); }, cap);
  return best;
}

CyclicReport nem_sigma_cyclic(const FeatureSequence& xs, const FeatureSequence& ys,
                              const CostModel& cm) {
  if (!xs.closed() || !ys.closed()) {
    throw std::invalid_argument("cyclic matching requires closed contours");
  }
  check_inputs(xs, ys, cm);
  std::size_t best_k = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const double total = nem_sigma_total(xs, ys.rotated(k), cm);
    if (total < best) {
      best = total;
      best_k = k;
    }
  }
  return CyclicReport{nem_sigma(xs, ys.rotated(best_k), cm), best_k};
}

}  // namespace nem
