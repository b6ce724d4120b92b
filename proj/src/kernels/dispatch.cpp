#include <atomic>
#include <cstdlib>
#include <string_view>

#include "nem/kernels.hpp"

namespace nem::kernels {

#if defined(NEM_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

namespace {

const KernelTable& detect() {
  if (const char* forced = std::getenv("NEM_KERNELS"); forced && std::string_view(forced) == "scalar") {
    return scalar();
  }
  if (const KernelTable* t = avx2()) return *t;
  return scalar();
}

std::atomic<const KernelTable*> g_override{nullptr};

}  // namespace

const KernelTable* avx2() {
#if defined(NEM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  if (const KernelTable* t = g_override.load(std::memory_order_acquire)) return *t;
  static const KernelTable& chosen = detect();
  return chosen;
}

void set_active(const KernelTable* table) { g_override.store(table, std::memory_order_release); }

}  // namespace nem::kernels
