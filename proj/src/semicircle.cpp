#include "edgelab/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "edgelab/error.hpp"

namespace edgelab::semicircle {

using std::numbers::pi;

double EdgeWindow::s() const noexcept { return static_cast<double>(n) * std::pow(2.0 - y, 1.5); }

void EdgeWindow::validate(double s_min) const {
  if (n == 0) throw ParameterError("edge window: n must be positive");
  if (!(delta > 0.0)) throw ParameterError("edge window: delta must be positive");
  if (!(y >= -2.0 + delta && y < 2.0)) {
    throw ParameterError("edge window: y = " + std::to_string(y) + " outside [-2 + delta, 2)");
  }
  const double scale = s();
  if (!(scale > 0.0) || scale < s_min) {
    throw ParameterError("edge window: s = " + std::to_string(scale) + " below s_min = " + std::to_string(s_min));
  }
}

EdgeWindow EdgeWindow::from_scale(std::size_t n, double s, double delta) {
  if (n == 0 || !(s > 0.0)) throw ParameterError("edge window: need n > 0 and s > 0");
  return {n, 2.0 - std::pow(s / static_cast<double>(n), 2.0 / 3.0), delta};
}

void EdgeIndex::validate() const {
  if (!(i >= 1 && i < n)) throw ParameterError("edge index: need 1 <= i < n");
}

EdgeIndex EdgeIndex::from_exponent(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("edge index: exponent must lie in (0, 1)");
  EdgeIndex e{n, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), alpha)))};
  e.validate();
  return e;
}

double density(double x) noexcept {
  if (!(std::fabs(x) <= 2.0)) return 0.0;
  return std::sqrt(std::max(0.0, 4.0 - x * x)) / (2.0 * pi);
}

double cdf(double t) noexcept {
  if (t <= -2.0) return 0.0;
  if (t >= 2.0) return 1.0;
  const double value = 0.5 + t * std::sqrt(4.0 - t * t) / (4.0 * pi) + std::asin(0.5 * t) / pi;
  return std::clamp(value, 0.0, 1.0);
}

double classical_location(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("classical_location: x must lie in [0, 1]");
  if (x == 0.0) return -2.0;
  if (x == 1.0) return 2.0;
  double lo = -2.0;
  double hi = 2.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double edge_expected_count(const EdgeWindow& w) { return 2.0 / (3.0 * pi) * w.s(); }

double edge_variance(const EdgeWindow& w) {
  const double s = w.s();
  if (!(s > 1.0)) throw DomainError("edge_variance: requires s > 1, got " + std::to_string(s));
  return std::log(s) / (2.0 * pi * pi);
}

double bulk_variance(std::size_t n) {
  if (n < 2) throw DomainError("bulk_variance: requires n >= 2");
  return std::log(static_cast<double>(n)) / (2.0 * pi * pi);
}

double classical_edge_location(const EdgeIndex& e) {
  const double ratio = static_cast<double>(e.i) / static_cast<double>(e.n);
  return 2.0 - std::pow(1.5 * pi * ratio, 2.0 / 3.0);
}

double edge_scale_constant() noexcept { return 1.0 / std::sqrt(std::pow(3.0 * pi, 2.0 / 3.0) * std::cbrt(2.0)); }

double edge_eigenvalue_scale(const EdgeIndex& e, double beta_factor) {
  if (e.i < 2) throw DomainError("edge eigenvalue scale: requires i >= 2 so that log i > 0");
  const double i = static_cast<double>(e.i);
  const double n = static_cast<double>(e.n);
  return edge_scale_constant() * std::sqrt(beta_factor * std::log(i) / (std::pow(i, 2.0 / 3.0) * std::pow(n, 4.0 / 3.0)));
}

double mdp_quantile_location(const EdgeIndex& e, double a, double x) {
  if (!(a >= 1.0)) throw ParameterError("mdp_quantile_location: a must be >= 1");
  return classical_edge_location(e) + a * x * edge_eigenvalue_scale(e, 1.0);
}

}  // namespace edgelab::semicircle
