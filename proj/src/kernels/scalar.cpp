#include <algorithm>
#include <cmath>
#include <limits>

#include "nem/contour.hpp"
#include "nem/kernels.hpp"

namespace nem::kernels {

namespace {

// Inputs are normalized angles, so |x - y| < 2pi and no fmod is needed.
inline double wrap_abs(double x, double y) {
  const double d = std::fabs(x - y);
  return std::min(d, kTwoPi - d);
}

void angular_abs_row(double x, std::span<const double> y, std::span<double> out) {
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = wrap_abs(x, y[j]);
}

void angular_sq_row(double x, std::span<const double> y, std::span<double> out) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double d = wrap_abs(x, y[j]);
    out[j] = d * d;
  }
}

void scalar_sq_row(double x, std::span<const double> y, std::span<double> out) {
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double d = x - y[j];
    out[j] = d * d;
  }
}

void scaled_abs_row(double x, std::span<const double> y, double r0, double r1,
                    std::span<double> out) {
  for (std::size_t j = 0; j < y.size(); ++j) out[j] = r0 + r1 * std::fabs(x - y[j]);
}

void dp_candidates(std::span<const double> prev, std::span<const double> sigma,
                   std::span<double> cand) {
  if (prev.empty()) return;
  cand[0] = prev[0] + sigma[0];
  for (std::size_t j = 1; j < prev.size(); ++j) cand[j] = std::min(prev[j - 1], prev[j] + sigma[j]);
}

double min_sq_distance(std::span<const double> ax, std::span<const double> ay,
                       std::span<const double> bx, std::span<const double> by) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ax.size(); ++i) {
    for (std::size_t j = 0; j < bx.size(); ++j) {
      const double dx = ax[i] - bx[j];
      const double dy = ay[i] - by[j];
      best = std::min(best, dx * dx + dy * dy);
    }
  }
  return best;
}

constexpr KernelTable kScalar{
    Isa::Scalar,     "scalar",       angular_abs_row, angular_sq_row,  scalar_sq_row,
    scaled_abs_row,  dp_candidates,  min_sq_distance,
};

}  // namespace

const KernelTable& scalar() { return kScalar; }

}  // namespace nem::kernels
