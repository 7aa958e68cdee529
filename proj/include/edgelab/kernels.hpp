#pragma once

// Inner-loop kernels with a portable scalar reference and AVX2 variants.
//
// The active table is chosen once at first use from CPUID; setting
// EDGELAB_SIMD=scalar in the environment forces the reference path.
// Sturm counts are bit-identical across variants (same operation order, no
// contraction). The Hermitian sweep reorders reductions, so its variants
// agree only to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace edgelab::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Symmetric tridiagonal data prepared for repeated Sturm counts.
struct SturmView {
  std::span<const double> diag;        // n entries
  std::span<const double> offdiag_sq;  // n-1 squared off-diagonal entries
  double pivmin;                       // pivots with |q| < pivmin are replaced by +pivmin
};

/// counts[j] = number of negative pivots in the LDL^T factorization of T - shifts[j] I.
using SturmCountFn = void (*)(const SturmView& t, std::span<const double> shifts, std::span<int> counts);

/// Lower-triangular Hermitian matrix, column-packed, split real/imaginary storage.
/// Column j holds rows j..n-1 starting at offset(j).
struct PackedHermitianView {
  double* re;
  double* im;
  std::size_t n;

  [[nodiscard]] static constexpr std::size_t offset(std::size_t n, std::size_t j) noexcept {
    return j * n - (j * (j - 1)) / 2;
  }
};

/// Arguments of one fused Householder sweep over columns first..n-1.
///
/// Applies the pending rank-2 update A -= u w^H + w u^H to the trailing block
/// and, in the same pass, accumulates p += A_updated * v. All vectors use
/// global row indexing and have length n.
struct SweepArgs {
  PackedHermitianView a;
  std::size_t first;
  const double* u_re;
  const double* u_im;
  const double* w_re;
  const double* w_im;
  const double* v_re;
  const double* v_im;
  double* p_re;
  double* p_im;
};

using HermitianSweepFn = void (*)(const SweepArgs& args);

struct KernelTable {
  Isa isa;
  SturmCountFn sturm_count;
  HermitianSweepFn hermitian_sweep;
};

/// True when the running CPU can execute the given variant.
bool supported(Isa isa) noexcept;

/// Kernel table for a specific variant. Throws ParameterError if unsupported.
const KernelTable& table(Isa isa);

/// Kernel table selected for this process.
const KernelTable& active() noexcept;

namespace detail {
void sturm_count_scalar(const SturmView& t, std::span<const double> shifts, std::span<int> counts);
void hermitian_sweep_scalar(const SweepArgs& args);
#if defined(__x86_64__) || defined(_M_X64)
void sturm_count_avx2(const SturmView& t, std::span<const double> shifts, std::span<int> counts);
void hermitian_sweep_avx2(const SweepArgs& args);
#endif
}  // namespace detail

}  // namespace edgelab::kernels
