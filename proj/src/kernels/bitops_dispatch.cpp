#include <cstdlib>
#include <string_view>

#include "deflog/kernels/bitops.hpp"

namespace deflog::kernels {

#if defined(DEFLOG_HAVE_AVX2)
namespace avx2 {
const BitKernels& table();
}
#endif

const BitKernels* avx2_kernels() {
#if defined(DEFLOG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
  }();
  return supported ? &avx2::table() : nullptr;
#else
  return nullptr;
#endif
}

const BitKernels& active_kernels() {
  static const BitKernels* chosen = [] {
    const char* env = std::getenv("DEFLOG_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
    if (const BitKernels* k = avx2_kernels()) return k;
    return &scalar_kernels();
  }();
  return *chosen;
}

}  // namespace deflog::kernels
