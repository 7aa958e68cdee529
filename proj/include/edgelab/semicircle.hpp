#pragma once

// Semicircle-law quantities at the W_n = M_n / sqrt(n) scale, and the
// leading-order edge formulas for the counting function and for individual
// eigenvalues near the right edge.

#include <cstddef>

namespace edgelab::semicircle {

/// Half-infinite window I = [y, inf) near the right edge.
struct EdgeWindow {
  std::size_t n;
  double y;
  double delta;

  /// Edge scale s = n (2 - y)^{3/2}.
  [[nodiscard]] double s() const noexcept;

  /// Throws ParameterError unless y in [-2 + delta, 2), s > 0 and s >= s_min.
  void validate(double s_min = 0.0) const;

  /// Window whose edge scale is exactly `s`: y = 2 - (s / n)^{2/3}.
  static EdgeWindow from_scale(std::size_t n, double s, double delta = 0.5);
};

/// Eigenvalue lambda_{n-i}, the (i+1)-th largest; requires 1 <= i < n.
struct EdgeIndex {
  std::size_t n;
  std::size_t i;

  void validate() const;

  /// i = floor(n^alpha), alpha in (0, 1).
  static EdgeIndex from_exponent(std::size_t n, double alpha);
};

/// (1 / 2pi) sqrt(4 - x^2) on [-2, 2], zero outside.
double density(double x) noexcept;

/// Integral of the density from -2 to t, in closed form, clamped to [0, 1].
double cdf(double t) noexcept;

/// The t in [-2, 2] with cdf(t) = x, by bisection to 1e-13.
/// Throws ParameterError unless 0 <= x <= 1.
double classical_location(double x);

/// Leading term (2 / 3pi) s of the expected count in the window.
double edge_expected_count(const EdgeWindow& w);

/// Leading term (1 / 2pi^2) log s of the count variance. Throws DomainError for s <= 1.
double edge_variance(const EdgeWindow& w);

/// (1 / 2pi^2) log n, the bulk count variance. Throws DomainError for n < 2.
double bulk_variance(std::size_t n);

/// 2 - (3 pi i / 2n)^{2/3}.
double classical_edge_location(const EdgeIndex& e);

/// ((3pi)^{2/3} 2^{1/3})^{-1/2}.
double edge_scale_constant() noexcept;

/// Standard deviation scale of lambda_{n-i}: const * (beta_factor log i / (i^{2/3} n^{4/3}))^{1/2}.
/// beta_factor is 1 for GUE and 2 for GOE. Throws DomainError for i < 2.
double edge_eigenvalue_scale(const EdgeIndex& e, double beta_factor = 1.0);

/// Threshold y_n(a) = classical_edge_location + a x const (log i / (i^{2/3} n^{4/3}))^{1/2}
/// so that {Z_{n,i} / a <= x} is the event {lambda_{n-i} <= y_n(a)}.
/// Throws DomainError for i < 2 and ParameterError for a < 1.
double mdp_quantile_location(const EdgeIndex& e, double a, double x);

}  // namespace edgelab::semicircle
