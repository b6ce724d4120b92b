#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "nem/elastic.hpp"
#include "nem/metric_audit.hpp"
#include "nem/shapes.hpp"
#include "oracles.hpp"

using namespace nem;

namespace {

// d(x, y) = (x - y)^2 over a grid of reals
PairTable squared_grid(const std::vector<double>& pts) {
  std::vector<std::string> names;
  for (double p : pts) names.push_back(std::to_string(p));
  return PairTable::tabulate(names, [&](std::size_t a, std::size_t b) {
    const double d = pts[a] - pts[b];
    return d * d;
  });
}

}  // namespace

TEST_CASE("pair table construction") {
  CHECK_THROWS_AS(PairTable({"a", "b"}, {0, 1, 1}), std::invalid_argument);
  const PairTable t({"a", "b"}, {0, 2, 3, 0});
  CHECK(t(0, 1) == 2);
  CHECK(t(1, 0) == 3);
  const auto par = PairTable::tabulate({"a", "b", "c", "d"},
                                       [](std::size_t x, std::size_t y) { return double(x * 10 + y); }, 3);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) CHECK(par(x, y) == double(x * 10 + y));
}

TEST_CASE("axiom checks report counterexamples") {
  const PairTable good({"a", "b"}, {0, 1, 1, 0});
  CHECK(check_axioms(good, 0.0).passed());

  const PairTable bad({"a", "b", "c"}, {0.5, 1, 2, 1, 0, -1, 2.5, -1, 0});
  const auto r = check_axioms(bad, 1e-12);
  CHECK_FALSE(r.identity_ok);
  REQUIRE(r.identity_failures.size() == 1);
  CHECK(r.identity_failures[0].x == "a");
  CHECK_FALSE(r.symmetry_ok);
  REQUIRE(r.symmetry_failures.size() == 1);
  CHECK(r.symmetry_failures[0].value == doctest::Approx(0.5));
  CHECK_FALSE(r.nonneg_ok);
  CHECK(r.nonneg_failures.size() == 2);
  CHECK_FALSE(r.passed());

  CHECK_THROWS_AS(check_axioms(PairTable({"a"}, {0}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(check_axioms(good, -1.0), std::invalid_argument);
}

TEST_CASE("triple sampling") {
  CHECK(sample_triples(0, 10, 1).empty());
  CHECK(sample_triples(3, 5, 1).size() == 27);
  const auto a = sample_triples(20, 300, 42);
  const auto b = sample_triples(20, 300, 42);
  REQUIRE(a.size() == 300);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].y == b[k].y);
    CHECK(a[k].z == b[k].z);
    CHECK(a[k].z < 20);
  }
  const auto c = sample_triples(20, 300, 43);
  bool differs = false;
  for (std::size_t k = 0; k < a.size(); ++k) differs = differs || a[k].x != c[k].x || a[k].z != c[k].z;
  CHECK(differs);
}

TEST_CASE("squared distance is a b-metric with modulus 2, not a metric") {
  std::vector<double> pts;
  for (int k = 0; k <= 20; ++k) pts.push_back(0.5 * k);
  const PairTable d = squared_grid(pts);
  const auto all = sample_triples(d.size(), 0, 0, d.size());
  const auto two = audit_table(d, all, [](std::size_t, std::size_t) { return 2.0; });
  CHECK(two.passed());
  CHECK(*two.max_ratio == doctest::Approx(2.0));
  const auto one = verify_relaxed_triangle(d, all, [](std::size_t, std::size_t) { return 1.0; });
  CHECK_FALSE(one.violations.empty());
  const auto ext = verify_relaxed_triangle(
      d, all, [&](std::size_t x, std::size_t z) { return pts[x] + pts[z] + 2.0; });
  CHECK(ext.violations.empty());
}

TEST_CASE("relaxation modulus witness and floor") {
  // d(a,c) = 4, d(a,b) = d(b,c) = 1: ratio 2 at (a,b,c)
  const PairTable d({"a", "b", "c"}, {0, 1, 4, 1, 0, 1, 4, 1, 0});
  const auto est = relaxation_modulus(d, sample_triples(3, 0, 0));
  REQUIRE(est.theta_hat);
  CHECK(*est.theta_hat == 2.0);
  CHECK(est.witness->x == "a");
  CHECK(est.witness->y == "b");
  CHECK(est.witness->z == "c");
  CHECK(est.witness->lhs == 4.0);
  CHECK(est.witness->rhs == 2.0);

  const PairTable zeros({"a", "b"}, {0, 0, 0, 0});
  const auto none = relaxation_modulus(zeros, sample_triples(2, 0, 0));
  CHECK_FALSE(none.theta_hat);
  CHECK(none.sample_count == 0);
  const auto vr = verify_relaxed_triangle(zeros, sample_triples(2, 0, 0),
                                          [](std::size_t, std::size_t) { return 1.0; });
  CHECK(vr.violations.empty());
  CHECK_FALSE(vr.max_ratio);
}

TEST_CASE("theoretical bound and theta surrogate") {
  CHECK(theoretical_bound_nem_r(kPi / 2, true) == doctest::Approx(2.0));
  CHECK(theoretical_bound_nem_r(kPi, false) == doctest::Approx(2.0));
  CHECK_THROWS_AS(theoretical_bound_nem_r(0.0, true), std::invalid_argument);
  CHECK_THROWS_AS(theoretical_bound_nem_r(-1.0, true), std::invalid_argument);

  const FeatureSequence a({0, 1}, {{"value", {0.0, 3.0}}});
  const FeatureSequence b({0}, {{"value", {1.0}}});
  CHECK(theta_surrogate_nem_sigma(a, b, CostModel{}) == 2.0);
  CostModel c3;
  c3.modulus.c = 3.0;
  CHECK(theta_surrogate_nem_sigma(a, b, c3) == 4.0);
  CostModel sum;
  sum.modulus.kind = ModulusKind::ScalarSum;
  CHECK(theta_surrogate_nem_sigma(a, b, sum) == 7.0);  // 1 + (3 + 1 + 2)
  CHECK_THROWS_AS(theta_surrogate_nem_sigma(FeatureSequence{}, b, sum), std::invalid_argument);
}

TEST_CASE("NEM_r audit stays under the uniform bound") {
  std::vector<Contour> shapes;
  for (const auto& s : random_shape_specs(8, 5, 48)) shapes.push_back(generate_shape(s));
  NemRBoundConfig cfg;
  cfg.r = kPi / 2;
  cfg.n_points = 24;
  cfg.threads = 2;
  const auto r = audit_nem_r_bound(shapes, cfg);
  CHECK(r.passed());
  CHECK(r.triples_checked == 512);
  REQUIRE(r.bound);
  CHECK(*r.bound == doctest::Approx(2.0));
  REQUIRE(r.max_ratio);
  CHECK(*r.max_ratio <= *r.bound);

  CHECK_THROWS_AS(audit_nem_r_bound({Contour("o", {{0, 0}, {1, 0}, {1, 1}}, false)}, cfg),
                  std::invalid_argument);
}

TEST_CASE("NEM_sigma satisfies the surrogate-relaxed triangle on random sequences") {
  std::mt19937_64 rng(12);
  std::vector<FeatureSequence> seqs;
  std::vector<std::string> names;
  for (int k = 0; k < 7; ++k) {
    seqs.push_back(oracle::random_sequence(rng, 6 + k % 3));
    names.push_back("q" + std::to_string(k));
  }
  for (const CostModel& cm : oracle::registry()) {
    const auto t = PairTable::tabulate(names, [&](std::size_t x, std::size_t y) {
      return nem_sigma_total(seqs[x], seqs[y], cm);
    });
    const auto rep = audit_table(t, sample_triples(t.size(), 0, 0), [&](std::size_t x, std::size_t z) {
      return theta_surrogate_nem_sigma(seqs[x], seqs[z], cm);
    });
    CHECK(rep.identity_ok);
    CHECK(rep.symmetry_ok);
    CHECK(rep.nonneg_ok);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("axiom audit examples") {
  const PairTable diff({"0", "1"}, {0, -1, 1, 0});  // d(x,y) = x - y
  const auto r = check_axioms(diff, 1e-12);
  CHECK_FALSE(r.symmetry_ok);
  REQUIRE(r.symmetry_failures.size() == 1);
  CHECK(r.symmetry_failures[0].x == "0");
  CHECK(r.symmetry_failures[0].y == "1");

  std::vector<double> grid;
  std::vector<std::string> names;
  for (int k = 0; k < 30; ++k) {
    grid.push_back(0.21 * k);
    names.push_back(std::to_string(k));
  }
  const auto ang = PairTable::tabulate(names, [&](std::size_t a, std::size_t b) {
    return angular_difference(grid[a], grid[b]);
  });
  CHECK(check_axioms(ang, 0.0).passed());
  CHECK(*relaxation_modulus(ang, sample_triples(30, 0, 0, 30)).theta_hat <= 1.0 + 1e-12);
}

TEST_CASE("Euclidean points are a metric; powers are b-metrics") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::array<double, 2>> pts(15);
  std::vector<std::string> names;
  for (auto& p : pts) {
    p = {u(rng), u(rng)};
    names.push_back(std::to_string(names.size()));
  }
  const auto euclid = PairTable::tabulate(names, [&](std::size_t a, std::size_t b) {
    return std::hypot(pts[a][0] - pts[b][0], pts[a][1] - pts[b][1]);
  });
  const auto all = sample_triples(15, 0, 0, 15);
  const auto est = relaxation_modulus(euclid, all);
  CHECK(*est.theta_hat <= 1.0 + 1e-12);
  CHECK(*est.theta_hat >= 0.5);
  CHECK(verify_relaxed_triangle(euclid, all, [](std::size_t, std::size_t) { return 1.0; }).violations.empty());

  for (int p : {2, 3}) {
    const auto pow_d = PairTable::tabulate(names, [&](std::size_t a, std::size_t b) {
      return std::pow(euclid(a, b), p);
    });
    const double c = std::pow(2.0, p - 1);
    CHECK(verify_relaxed_triangle(pow_d, all, [c](std::size_t, std::size_t) { return c; }).violations.empty());
  }
}

TEST_CASE("squared distance on three points") {
  const auto d = squared_grid({0, 1, 2});
  const std::vector<Triple> one{{0, 1, 2}};
  CHECK(*relaxation_modulus(d, one).theta_hat == 2.0);
  const auto rep = verify_relaxed_triangle(d, one, [](std::size_t, std::size_t) { return 1.0; });
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].lhs == 4.0);
  CHECK(rep.violations[0].rhs == 2.0);
}

TEST_CASE("surrogate for a scalar-sum modulus over [0, 1] features") {
  const FeatureSequence a({0, 1, 2}, {{"value", {0.0, 0.5, 1.0}}});
  const FeatureSequence b({0, 1}, {{"value", {1.0, 0.0}}});
  CostModel sum;
  sum.modulus.kind = ModulusKind::ScalarSum;
  CHECK(theta_surrogate_nem_sigma(a, b, sum) == 5.0);
}

TEST_CASE("large r tightens the bound toward one") {
  std::vector<Contour> shapes;
  for (const auto& s : random_shape_specs(6, 13, 48)) shapes.push_back(generate_shape(s));
  NemRBoundConfig cfg;
  cfg.r = 100.0;
  cfg.n_points = 16;
  const auto r = audit_nem_r_bound(shapes, cfg);
  CHECK(*r.bound == doctest::Approx(1.0157079632679489));
  CHECK(*r.max_ratio <= *r.bound);
  CHECK(r.passed());
}

TEST_CASE("one shape repeated has no usable ratios") {
  ShapeSpec s;
  const Contour c = generate_shape(s);
  Contour copy("copy", {c.points().begin(), c.points().end()});
  const auto r = audit_nem_r_bound({c, copy}, NemRBoundConfig{});
  CHECK(r.passed());
  CHECK_FALSE(r.max_ratio);
}

TEST_CASE("theta_hat is a self-consistent modulus for NEM_sigma") {
  std::mt19937_64 rng(44);
  std::vector<FeatureSequence> seqs;
  std::vector<std::string> names;
  for (int k = 0; k < 9; ++k) {
    seqs.push_back(oracle::random_sequence(rng, 5 + k % 4));
    names.push_back("s" + std::to_string(k));
  }
  const auto cm = CostModel::feature_scaled(0.5, 1.0, "velocity");
  const auto t = PairTable::tabulate(names, [&](std::size_t x, std::size_t y) {
    return nem_sigma_total(seqs[x], seqs[y], cm);
  });
  const auto all = sample_triples(9, 0, 0);
  const double th = *relaxation_modulus(t, all).theta_hat;
  CHECK(th >= 0.5);
  CHECK(verify_relaxed_triangle(t, all, [th](std::size_t, std::size_t) { return th + 1e-9; })
            .violations.empty());
}
