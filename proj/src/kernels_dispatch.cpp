#include <cstdlib>
#include <string_view>

#include "efx/kernels.hpp"

namespace efx::kernels {

const KernelTable& active() {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* env = std::getenv("EFX_SIMD");
    const std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return table;
}

}  // namespace efx::kernels
