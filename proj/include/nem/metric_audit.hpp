#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nem/contour.hpp"
#include "nem/cost_model.hpp"

namespace nem {

/// Dissimilarity values for every ordered pair of named instances.
/// values[x * size + y] = d(x, y); not assumed symmetric.
class PairTable {
 public:
  PairTable(std::vector<std::string> names, std::vector<double> values);

  /// Evaluates d on every ordered pair. With threads > 1 pairs are spread
  /// over workers; each cell is written once, so the result does not depend
  /// on the thread count.
  static PairTable tabulate(std::vector<std::string> names,
                            const std::function<double(std::size_t, std::size_t)>& d,
                            unsigned threads = 1);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  double operator()(std::size_t x, std::size_t y) const { return values_[x * names_.size() + y]; }

 private:
  std::vector<std::string> names_;
  std::vector<double> values_;
};

struct Triple {
  std::size_t x = 0;
  std::size_t y = 0;
  std::size_t z = 0;
};

struct TripleWitness {
  std::string x, y, z;
  double lhs = 0.0;  ///< d(x, z)
  double rhs = 0.0;  ///< d(x, y) + d(y, z), before scaling by any bound
  double ratio = 0.0;
};

struct PairCounterexample {
  std::string x, y;
  double value = 0.0;  ///< offending d(x, x), asymmetry, or negative value
};

struct AuditReport {
  bool identity_ok = true;
  bool symmetry_ok = true;
  bool nonneg_ok = true;
  std::vector<PairCounterexample> identity_failures;
  std::vector<PairCounterexample> symmetry_failures;
  std::vector<PairCounterexample> nonneg_failures;

  std::size_t triples_checked = 0;
  std::optional<double> max_ratio;
  std::optional<TripleWitness> worst;
  std::optional<double> bound;  ///< constant bound when the audit used one
  std::vector<TripleWitness> violations;

  bool passed() const noexcept {
    return identity_ok && symmetry_ok && nonneg_ok && violations.empty();
  }
};

struct ModulusEstimate {
  std::optional<double> theta_hat;  ///< empty when every denominator was below the floor
  std::optional<TripleWitness> witness;
  std::size_t sample_count = 0;  ///< triples that cleared the floor
  double floor = 0.0;
};

inline constexpr double kRatioFloor = 1e-12;
inline constexpr double kTriangleSlack = 1e-9;

/// d(x,x) <= tol, |d(x,y) - d(y,x)| <= tol and d >= -tol over all pairs.
/// Needs at least two instances.
AuditReport check_axioms(const PairTable& d, double tol);

/// Every ordered triple when size <= exhaustive_limit, otherwise `count`
/// triples drawn uniformly with replacement from a seeded generator.
std::vector<Triple> sample_triples(std::size_t size, std::size_t count, std::uint64_t seed,
                                   std::size_t exhaustive_limit = 12);

/// Largest d(x,z) / (d(x,y) + d(y,z)) over triples whose denominator exceeds
/// the floor.
ModulusEstimate relaxation_modulus(const PairTable& d, const std::vector<Triple>& triples,
                                   double floor = kRatioFloor);

/// Flags triples with d(x,z) > theta(x,z) * (d(x,y) + d(y,z)) + slack. Also
/// fills max_ratio/worst from the same triples.
AuditReport verify_relaxed_triangle(const PairTable& d, const std::vector<Triple>& triples,
                                    const std::function<double(std::size_t, std::size_t)>& theta,
                                    double slack = kTriangleSlack);

/// check_axioms(d, tol) followed by verify_relaxed_triangle on the triples,
/// merged into one report.
AuditReport audit_table(const PairTable& d, const std::vector<Triple>& triples,
                        const std::function<double(std::size_t, std::size_t)>& theta,
                        double tol = 1e-12);

/// 1 + pi/(2r) for uniformly sampled shapes, 1 + pi/r otherwise.
double theoretical_bound_nem_r(double r, bool uniform);

/// 1 + max over element pairs of the modulus alpha(x_i, z_k).
double theta_surrogate_nem_sigma(const FeatureSequence& xs, const FeatureSequence& zs,
                                 const CostModel& cm);

struct NemRBoundConfig {
  double r = kPi / 2.0;
  std::size_t n_points = 32;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

/// Resamples every (closed) shape to n_points, tabulates NEM_r and checks the
/// sampled triples against 1 + pi/(2r). Axiom checks are included.
AuditReport audit_nem_r_bound(const std::vector<Contour>& shapes, const NemRBoundConfig& config);

}  // namespace nem
