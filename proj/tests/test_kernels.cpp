#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "nem/elastic.hpp"
#include "nem/kernels.hpp"
#include "nem/retrieval.hpp"
#include "nem/shapes.hpp"
#include "oracles.hpp"

using namespace nem;
namespace k = nem::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> angles(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, kTwoPi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  // sprinkle the awkward spots: 0, pi, just under 2pi
  const double special[] = {0.0, kPi, std::nextafter(kTwoPi, 0.0), kPi / 2};
  for (std::size_t i = 0; i < n && i < 4; ++i) v[i * 3 % n] = special[i];
  return v;
}

struct Restore {
  ~Restore() { k::set_active(nullptr); }
};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(k::scalar().isa == k::Isa::Scalar);
  CHECK(std::string(k::scalar().name) == "scalar");
  if (const auto* t = k::avx2()) CHECK(t->isa == k::Isa::Avx2);
}

TEST_CASE("set_active overrides and restores") {
  Restore guard;
  k::set_active(&k::scalar());
  CHECK(&k::active() == &k::scalar());
  k::set_active(nullptr);
  CHECK(k::active().name != nullptr);
}

TEST_CASE("row kernels are bit-identical across ISAs") {
  const k::KernelTable* fast = k::avx2();
  if (!fast) {
    MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
    return;
  }
  const k::KernelTable& ref = k::scalar();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (std::size_t n = 0; n <= 37; ++n) {
    CAPTURE(n);
    const auto y = n ? angles(rng, n) : std::vector<double>{};
    for (double x : {0.0, kPi, 1.234, std::nextafter(kTwoPi, 0.0)}) {
      std::vector<double> a(n), b(n);
      ref.angular_abs_row(x, y, a);
      fast->angular_abs_row(x, y, b);
      CHECK(same_bits(a, b));
      ref.angular_sq_row(x, y, a);
      fast->angular_sq_row(x, y, b);
      CHECK(same_bits(a, b));
    }
    std::vector<double> s(n);
    for (auto& v : s) v = u(rng);
    const double x = u(rng);
    std::vector<double> a(n), b(n);
    ref.scalar_sq_row(x, s, a);
    fast->scalar_sq_row(x, s, b);
    CHECK(same_bits(a, b));
    ref.scaled_abs_row(x, s, 0.5, 1.5, a);
    fast->scaled_abs_row(x, s, 0.5, 1.5, b);
    CHECK(same_bits(a, b));

    if (n > 0) {
      std::vector<double> prev(n), sig(n);
      for (std::size_t j = 0; j < n; ++j) {
        prev[j] = std::fabs(u(rng)) * 10.0;
        sig[j] = std::fabs(u(rng));
      }
      if (n > 3) prev[2] = prev[1] + sig[2];  // force a tie between candidates
      ref.dp_candidates(prev, sig, a);
      fast->dp_candidates(prev, sig, b);
      CHECK(same_bits(a, b));
    }
  }
}

TEST_CASE("min_sq_distance agrees with a direct double loop") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (std::size_t na : {1u, 3u, 4u, 9u, 33u}) {
    for (std::size_t nb : {1u, 2u, 5u, 16u, 31u}) {
      std::vector<double> ax(na), ay(na), bx(nb), by(nb);
      for (auto* v : {&ax, &ay}) for (auto& x : *v) x = u(rng);
      for (auto* v : {&bx, &by}) for (auto& x : *v) x = u(rng) + 1.0;
      double best = INFINITY;
      for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < nb; ++j) {
          const double dx = ax[i] - bx[j], dy = ay[i] - by[j];
          best = std::min(best, dx * dx + dy * dy);
        }
      CHECK(k::scalar().min_sq_distance(ax, ay, bx, by) == best);
      if (const auto* fast = k::avx2()) CHECK(fast->min_sq_distance(ax, ay, bx, by) == best);
    }
  }
}

TEST_CASE("solver results do not depend on the kernel table") {
  const k::KernelTable* fast = k::avx2();
  if (!fast) return;
  Restore guard;
  std::mt19937_64 rng(3);
  for (const CostModel& cm : oracle::registry()) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto xs = oracle::random_sequence(rng, 17 + trial);
      const auto ys = oracle::random_sequence(rng, 23 - trial);
      k::set_active(&k::scalar());
      const double a = nem_sigma_total(xs, ys, cm);
      const auto ra = nem_sigma(xs, ys, cm);
      k::set_active(fast);
      const double b = nem_sigma_total(xs, ys, cm);
      const auto rb = nem_sigma(xs, ys, cm);
      CHECK(a == b);
      CHECK(ra.total == rb.total);
      CHECK(ra.optimal_mapping == rb.optimal_mapping);
    }
  }
  ShapeSpec c;
  ShapeSpec e;
  e.kind = ShapeKind::Ellipse;
  e.a = 2.0;
  e.center = {3.5, 0.0};
  const Contour ca = generate_shape(c), cb = generate_shape(e);
  k::set_active(&k::scalar());
  const double g1 = boundary_gap(ca, cb);
  k::set_active(fast);
  CHECK(boundary_gap(ca, cb) == g1);
}
