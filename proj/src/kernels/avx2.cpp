// Compiled with -mavx2 only; never called unless the CPU reports AVX2.

#include <immintrin.h>

#include <cmath>
#include <limits>

#include "nem/contour.hpp"
#include "nem/kernels.hpp"

namespace nem::kernels {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(sign, v);
}

inline __m256d wrap_abs_pd(__m256d x, __m256d y, __m256d two_pi) {
  const __m256d d = abs_pd(_mm256_sub_pd(x, y));
  // _mm256_min_pd(a, b) yields b on equality, matching std::min(a, b) by value
  return _mm256_min_pd(d, _mm256_sub_pd(two_pi, d));
}

// Same semantics as std::min, kept local so no shared template instantiation
// is emitted from this translation unit with VEX encoding.
inline double min_d(double a, double b) { return b < a ? b : a; }

inline double wrap_abs(double x, double y) {
  const double d = std::fabs(x - y);
  return min_d(d, kTwoPi - d);
}

void angular_abs_row(double x, std::span<const double> y, std::span<double> out) {
  const std::size_t n = y.size();
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    _mm256_storeu_pd(out.data() + j, wrap_abs_pd(vx, _mm256_loadu_pd(y.data() + j), two_pi));
  }
  for (; j < n; ++j) out[j] = wrap_abs(x, y[j]);
}

void angular_sq_row(double x, std::span<const double> y, std::span<double> out) {
  const std::size_t n = y.size();
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d two_pi = _mm256_set1_pd(kTwoPi);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = wrap_abs_pd(vx, _mm256_loadu_pd(y.data() + j), two_pi);
    _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(d, d));
  }
  for (; j < n; ++j) {
    const double d = wrap_abs(x, y[j]);
    out[j] = d * d;
  }
}

void scalar_sq_row(double x, std::span<const double> y, std::span<double> out) {
  const std::size_t n = y.size();
  const __m256d vx = _mm256_set1_pd(x);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = _mm256_sub_pd(vx, _mm256_loadu_pd(y.data() + j));
    _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(d, d));
  }
  for (; j < n; ++j) {
    const double d = x - y[j];
    out[j] = d * d;
  }
}

void scaled_abs_row(double x, std::span<const double> y, double r0, double r1,
                    std::span<double> out) {
  const std::size_t n = y.size();
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d v0 = _mm256_set1_pd(r0);
  const __m256d v1 = _mm256_set1_pd(r1);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(vx, _mm256_loadu_pd(y.data() + j)));
    _mm256_storeu_pd(out.data() + j, _mm256_add_pd(v0, _mm256_mul_pd(v1, d)));
  }
  for (; j < n; ++j) out[j] = r0 + r1 * std::fabs(x - y[j]);
}

void dp_candidates(std::span<const double> prev, std::span<const double> sigma,
                   std::span<double> cand) {
  const std::size_t n = prev.size();
  if (n == 0) return;
  cand[0] = prev[0] + sigma[0];
  std::size_t j = 1;
  for (; j + 4 <= n; j += 4) {
    const __m256d diag = _mm256_loadu_pd(prev.data() + j - 1);
    const __m256d up = _mm256_add_pd(_mm256_loadu_pd(prev.data() + j),
                                     _mm256_loadu_pd(sigma.data() + j));
    // operand order mirrors std::min(diag, up): on ties both hold the same value
    _mm256_storeu_pd(cand.data() + j, _mm256_min_pd(up, diag));
  }
  for (; j < n; ++j) cand[j] = min_d(prev[j - 1], prev[j] + sigma[j]);
}

double min_sq_distance(std::span<const double> ax, std::span<const double> ay,
                       std::span<const double> bx, std::span<const double> by) {
  const std::size_t nb = bx.size();
  double best = std::numeric_limits<double>::infinity();
  __m256d vbest = _mm256_set1_pd(best);
  for (std::size_t i = 0; i < ax.size(); ++i) {
    const __m256d px = _mm256_set1_pd(ax[i]);
    const __m256d py = _mm256_set1_pd(ay[i]);
    std::size_t j = 0;
    for (; j + 4 <= nb; j += 4) {
      const __m256d dx = _mm256_sub_pd(px, _mm256_loadu_pd(bx.data() + j));
      const __m256d dy = _mm256_sub_pd(py, _mm256_loadu_pd(by.data() + j));
      const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
      vbest = _mm256_min_pd(vbest, d2);
    }
    for (; j < nb; ++j) {
      const double dx = ax[i] - bx[j];
      const double dy = ay[i] - by[j];
      best = min_d(best, dx * dx + dy * dy);
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vbest);
  for (double v : lanes) best = min_d(best, v);
  return best;
}

constexpr KernelTable kAvx2{
    Isa::Avx2,       "avx2",         angular_abs_row, angular_sq_row,  scalar_sq_row,
    scaled_abs_row,  dp_candidates,  min_sq_distance,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace nem::kernels
