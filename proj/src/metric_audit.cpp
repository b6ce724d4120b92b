#include "nem/metric_audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>

#include "nem/elastic.hpp"

namespace nem {

PairTable::PairTable(std::vector<std::string> names, std::vector<double> values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (values_.size() != names_.size() * names_.size()) {
    throw std::invalid_argument("pair table needs size^2 values");
  }
}

PairTable PairTable::tabulate(std::vector<std::string> names,
                              const std::function<double(std::size_t, std::size_t)>& d,
                              unsigned threads) {
  const std::size_t n = names.size();
  std::vector<double> values(n * n);
  const std::size_t cells = n * n;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next.fetch_add(1); c < cells; c = next.fetch_add(1)) {
      values[c] = d(c / n, c % n);
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return PairTable(std::move(names), std::move(values));
}

AuditReport check_axioms(const PairTable& d, double tol) {
  if (d.size() < 2) throw std::invalid_argument("axiom check needs at least 2 instances");
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be >= 0");
  AuditReport report;
  const auto& names = d.names();
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (!(d(x, x) <= tol)) report.identity_failures.push_back({names[x], names[x], d(x, x)});
    for (std::size_t y = 0; y < d.size(); ++y) {
      if (!(d(x, y) >= -tol)) report.nonneg_failures.push_back({names[x], names[y], d(x, y)});
      if (y > x) {
        const double gap = std::fabs(d(x, y) - d(y, x));
        if (!(gap <= tol)) report.symmetry_failures.push_back({names[x], names[y], gap});
      }
    }
  }
  report.identity_ok = report.identity_failures.empty();
  report.symmetry_ok = report.symmetry_failures.empty();
  report.nonneg_ok = report.nonneg_failures.empty();
  return report;
}

std::vector<Triple> sample_triples(std::size_t size, std::size_t count, std::uint64_t seed,
                                   std::size_t exhaustive_limit) {
  std::vector<Triple> out;
  if (size == 0) return out;
  if (size <= exhaustive_limit) {
    out.reserve(size * size * size);
    for (std::size_t x = 0; x < size; ++x)
      for (std::size_t y = 0; y < size; ++y)
        for (std::size_t z = 0; z < size; ++z) out.push_back({x, y, z});
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, size - 1);
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t x = pick(rng);
    const std::size_t y = pick(rng);
    out.push_back({x, y, pick(rng)});
  }
  return out;
}

namespace {

TripleWitness witness(const PairTable& d, const Triple& t) {
  const double lhs = d(t.x, t.z);
  const double rhs = d(t.x, t.y) + d(t.y, t.z);
  return {d.names()[t.x], d.names()[t.y], d.names()[t.z], lhs, rhs, rhs > 0.0 ? lhs / rhs : 0.0};
}

}  // namespace

ModulusEstimate relaxation_modulus(const PairTable& d, const std::vector<Triple>& triples,
                                   double floor) {
  ModulusEstimate est;
  est.floor = floor;
  for (const Triple& t : triples) {
    const double rhs = d(t.x, t.y) + d(t.y, t.z);
    if (!(rhs > floor)) continue;
    ++est.sample_count;
    const double ratio = d(t.x, t.z) / rhs;
    // strict comparison keeps the first maximizer in triple order
    if (!est.theta_hat || ratio > *est.theta_hat) {
      est.theta_hat = ratio;
      est.witness = witness(d, t);
    }
  }
  return est;
}

AuditReport verify_relaxed_triangle(const PairTable& d, const std::vector<Triple>& triples,
                                    const std::function<double(std::size_t, std::size_t)>& theta,
                                    double slack) {
  AuditReport report;
  report.triples_checked = triples.size();
  for (const Triple& t : triples) {
    const TripleWitness w = witness(d, t);
    if (w.lhs > theta(t.x, t.z) * w.rhs + slack) report.violations.push_back(w);
  }
  const ModulusEstimate est = relaxation_modulus(d, triples);
  report.max_ratio = est.theta_hat;
  report.worst = est.witness;
  return report;
}

AuditReport audit_table(const PairTable& d, const std::vector<Triple>& triples,
                        const std::function<double(std::size_t, std::size_t)>& theta, double tol) {
  AuditReport report = check_axioms(d, tol);
  AuditReport tri = verify_relaxed_triangle(d, triples, theta);
  report.triples_checked = tri.triples_checked;
  report.max_ratio = tri.max_ratio;
  report.worst = std::move(tri.worst);
  report.violations = std::move(tri.violations);
  return report;
}

double theoretical_bound_nem_r(double r, bool uniform) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("r must be positive");
  return uniform ? 1.0 + kPi / (2.0 * r) : 1.0 + kPi / r;
}

double theta_surrogate_nem_sigma(const FeatureSequence& xs, const FeatureSequence& zs,
                                 const CostModel& cm) {
  if (xs.empty() || zs.empty()) throw std::invalid_argument("theta surrogate needs nonempty sequences");
  if (cm.modulus.kind == ModulusKind::Constant) {
    cm.validate();
    return 1.0 + cm.modulus.c;
  }
  double best = 1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t k = 0; k < zs.size(); ++k) best = std::max(best, evaluate_modulus(cm, xs, i, zs, k));
  }
  return 1.0 + best;
}

AuditReport audit_nem_r_bound(const std::vector<Contour>& shapes, const NemRBoundConfig& config) {
  const double bound = theoretical_bound_nem_r(config.r, true);
  std::vector<FeatureSequence> seqs;
  std::vector<std::string> names;
  seqs.reserve(shapes.size());
  for (const Contour& c : shapes) {
    if (!c.closed()) throw std::invalid_argument("audit_nem_r_bound needs closed contours");
    seqs.push_back(to_features(resample_uniform(c, config.n_points)));
    names.push_back(c.name());
  }
  const CostModel cm = CostModel::angular_constant(config.r);
  const PairTable table = PairTable::tabulate(
      std::move(names), [&](std::size_t x, std::size_t y) { return nem_sigma_total(seqs[x], seqs[y], cm); },
      config.threads);

  const auto triples = sample_triples(table.size(), config.trials, config.seed);
  if (table.size() < 2) {
    AuditReport report = verify_relaxed_triangle(table, triples, [bound](std::size_t, std::size_t) { return bound; });
    report.bound = bound;
    return report;
  }
  AuditReport report = audit_table(table, triples, [bound](std::size_t, std::size_t) { return bound; });
  report.bound = bound;
  return report;
}

}  // namespace nem
