#pragma once

// Independent reference computations for the tests. Nothing here shares code
// with the library: eigenvalues come from cyclic Jacobi rotations on a dense
// matrix, integrals from tanh-sinh quadrature.

#include <algorithm>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

/// Eigenvalues of a dense real symmetric matrix (row-major), ascending.
inline std::vector<double> jacobi_eigenvalues(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (at(p, q) == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Eigenvalues of a symmetric tridiagonal matrix, through a dense copy.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& d, const std::vector<double>& e) {
  const std::size_t n = d.size();
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i * n + i] = d[i];
  for (std::size_t i = 0; i + 1 < n; ++i) a[i * n + i + 1] = a[(i + 1) * n + i] = e[i];
  return jacobi_eigenvalues(std::move(a), n);
}

/// Eigenvalues of a dense Hermitian matrix via the real embedding [[Re, -Im], [Im, Re]],
/// whose spectrum is the Hermitian spectrum with every eigenvalue doubled.
inline std::vector<double> hermitian_eigenvalues(const std::vector<std::complex<double>>& h, std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto z = h[i * n + j];
      a[i * m + j] = z.real();
      a[i * m + j + n] = -z.imag();
      a[(i + n) * m + j] = z.imag();
      a[(i + n) * m + j + n] = z.real();
    }
  }
  const auto doubled = jacobi_eigenvalues(std::move(a), m);
  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) eig[k] = doubled[2 * k];
  return eig;
}

/// Number of values strictly below y.
inline std::size_t count_below(const std::vector<double>& values, double y) {
  return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return v < y; }));
}

/// Integral of f over [lo, hi] by tanh-sinh quadrature.
inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
  if (hi <= lo) return 0.0;
  static boost::math::quadrature::tanh_sinh<double> rule;
  return rule.integrate(f, lo, hi, 1e-15);
}

/// Two-pass sample moments: mean, unbiased variance, skewness g1 and excess kurtosis g2.
struct Moments {
  double mean, variance, skewness, excess_kurtosis;
};

inline Moments two_pass_moments(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  return {mean, m2 / (n - 1.0), std::sqrt(n) * m3 / std::pow(m2, 1.5), n * m4 / (m2 * m2) - 3.0};
}

}  // namespace oracle
