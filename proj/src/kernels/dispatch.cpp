#include <cstdlib>
#include <string>

#include "edgelab/error.hpp"
#include "edgelab/kernels.hpp"

namespace edgelab::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &detail::sturm_count_scalar, &detail::hermitian_sweep_scalar};
#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::avx2, &detail::sturm_count_avx2, &detail::hermitian_sweep_avx2};
#endif

const KernelTable& select() noexcept {
  if (const char* env = std::getenv("EDGELAB_SIMD")) {
    if (std::string(env) == "scalar") return kScalar;
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (supported(Isa::avx2)) return kAvx2;
#endif
  return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

bool supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!supported(isa)) throw ParameterError("kernel variant not supported on this CPU: " + std::string(isa_name(isa)));
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::avx2) return kAvx2;
#endif
  return kScalar;
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace edgelab::kernels
