#pragma once

// Spectral queries on symmetric tridiagonal matrices.
//
// Eigenvalues are ordered lambda_1 <= ... <= lambda_n. Counting intervals are
// I = [y, inf), closed at y: an eigenvalue equal to y is inside I and is not
// "below" y.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "edgelab/ensembles.hpp"
#include "edgelab/kernels.hpp"
#include "edgelab/tridiagonal.hpp"

namespace edgelab {

struct Interval {
  double lo;
  double hi;
};

/// Interval containing every eigenvalue (union of Gershgorin discs).
Interval gershgorin_bounds(const TridiagonalMatrix& t);

/// Absolute bisection tolerance 1e-12 * max(1, radius), radius = max(|lo|, |hi|) of the Gershgorin bounds.
double bisection_tolerance(const TridiagonalMatrix& t);

/// Householder reduction of a dense Hermitian matrix (row-major, n x n) to a real
/// symmetric tridiagonal matrix with the same spectrum. Only the lower triangle
/// is read. Off-diagonal entries are returned nonnegative. Throws NumericError on
/// non-finite entries.
TridiagonalMatrix householder_tridiagonalize(std::span<const std::complex<double>> dense, std::size_t n,
                                             const kernels::KernelTable& kernels = kernels::active());

/// Reduction of a Wigner sample; the result carries scale tag Mn.
TridiagonalMatrix householder_tridiagonalize(const WignerSample& sample);

/// Repeated Sturm-count queries against one matrix.
///
/// Pivots of LDL^T(T - yI) with magnitude below eps * ||T||_inf are replaced by
/// +eps * ||T||_inf, so a threshold landing exactly on an eigenvalue does not
/// count that eigenvalue as below.
class SturmCounter {
 public:
  explicit SturmCounter(const TridiagonalMatrix& t, const kernels::KernelTable& kernels = kernels::active());

  [[nodiscard]] std::size_t size() const noexcept { return diag_.size(); }

  /// Number of eigenvalues strictly less than y.
  [[nodiscard]] std::size_t count_below(double y) const;

  /// Batched count_below, out[j] for shifts[j].
  void count_below(std::span<const double> shifts, std::span<int> out) const;

  /// lambda_i (1-based) by multisection on the Sturm count. The returned value
  /// is the upper end of the final bracket: count_below(v) >= i and
  /// count_below(v - tol) < i. Throws IndexError unless 1 <= i <= n.
  [[nodiscard]] double kth_eigenvalue(std::size_t i) const;

  /// All eigenvalues, nondecreasing, by batched per-index bisection.
  [[nodiscard]] std::vector<double> all_eigenvalues() const;

  [[nodiscard]] Interval bounds() const noexcept { return bounds_; }
  [[nodiscard]] double tolerance() const noexcept { return tol_; }

 private:
  [[nodiscard]] kernels::SturmView view() const noexcept { return {diag_, offdiag_sq_, pivmin_}; }

  const kernels::KernelTable* kernels_;
  std::vector<double> diag_;
  std::vector<double> offdiag_sq_;
  double pivmin_;
  Interval bounds_;
  double tol_;
};

/// Number of eigenvalues strictly less than y.
std::size_t count_below(const TridiagonalMatrix& t, double y);

/// N_[y, inf)(T) = n - count_below(T, y).
std::size_t counting_function(const TridiagonalMatrix& t, double y);

/// lambda_i, 1-based ascending. Throws IndexError unless 1 <= i <= n.
double kth_eigenvalue(const TridiagonalMatrix& t, std::size_t i);

/// Sorted spectrum.
std::vector<double> all_eigenvalues(const TridiagonalMatrix& t);

/// Rescale entries so that eigenvalues map as lambda(W_n) = lambda(M_n) / sqrt(n).
/// Identity when the tags already agree.
TridiagonalMatrix rescale(const TridiagonalMatrix& t, Scale target);

/// Multiply every entry by factor (scale tag unchanged).
TridiagonalMatrix scaled(const TridiagonalMatrix& t, double factor);

}  // namespace edgelab
