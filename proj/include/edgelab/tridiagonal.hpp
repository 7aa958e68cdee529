#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace edgelab {

/// Normalization of matrix entries: raw M_n, or W_n = M_n / sqrt(n).
enum class Scale { mn, wn };

/// Real symmetric tridiagonal matrix. Every spectral query runs on this form.
class TridiagonalMatrix {
 public:
  /// Throws ParameterError on empty input or |offdiag| != |diag| - 1,
  /// NumericError on non-finite entries.
  TridiagonalMatrix(std::vector<double> diag, std::vector<double> offdiag, Scale scale = Scale::mn);

  [[nodiscard]] std::size_t size() const noexcept { return diag_.size(); }
  [[nodiscard]] std::span<const double> diag() const noexcept { return diag_; }
  [[nodiscard]] std::span<const double> offdiag() const noexcept { return offdiag_; }
  [[nodiscard]] Scale scale() const noexcept { return scale_; }

  /// Sum of the diagonal.
  [[nodiscard]] double trace() const noexcept;

 private:
  std::vector<double> diag_;
  std::vector<double> offdiag_;
  Scale scale_;
};

}  // namespace edgelab
