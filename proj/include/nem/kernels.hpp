#pragma once

#include <span>

namespace nem::kernels {

enum class Isa { Scalar, Avx2 };

/// Inner loops of the solvers. Every variant must produce results that are
/// bit-identical to the scalar reference: same operations in the same order,
/// no fused multiply-add.
struct KernelTable {
  Isa isa;
  const char* name;

  /// out[j] = min(|x - y[j]|, 2pi - |x - y[j]|); angles in [0, 2pi).
  void (*angular_abs_row)(double x, std::span<const double> y, std::span<double> out);
  /// out[j] = angular_abs(x, y[j])^2
  void (*angular_sq_row)(double x, std::span<const double> y, std::span<double> out);
  /// out[j] = (x - y[j])^2
  void (*scalar_sq_row)(double x, std::span<const double> y, std::span<double> out);
  /// out[j] = r0 + r1 * |x - y[j]|
  void (*scaled_abs_row)(double x, std::span<const double> y, double r0, double r1,
                         std::span<double> out);
  /// Vertical/diagonal half of one DP row:
  ///   cand[0] = prev[0] + sigma[0]
  ///   cand[j] = min(prev[j-1], prev[j] + sigma[j])   for j >= 1
  void (*dp_candidates)(std::span<const double> prev, std::span<const double> sigma,
                        std::span<double> cand);
  /// min over (i, j) of (ax[i]-bx[j])^2 + (ay[i]-by[j])^2
  double (*min_sq_distance)(std::span<const double> ax, std::span<const double> ay,
                            std::span<const double> bx, std::span<const double> by);
};

const KernelTable& scalar();

/// nullptr when not compiled in or the CPU lacks AVX2.
const KernelTable* avx2();

/// The table used by the library. Chosen once: the widest supported variant,
/// unless the environment variable NEM_KERNELS=scalar forces the reference.
const KernelTable& active();

/// Overrides the active table (tests and benchmarks); passing nullptr restores
/// the automatic choice.
void set_active(const KernelTable* table);

}  // namespace nem::kernels
