#include "edgelab/statistics.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "edgelab/error.hpp"

namespace edgelab::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_a(double a) {
  if (!(a >= 1.0)) throw ParameterError("scaling sequence value a must be >= 1");
}

bool exceeds(double value, double a, double x) { return x > 0.0 ? value / a >= x : value / a <= x; }

}  // namespace

StandardizedStat standardize_counting_edge(std::size_t count, const semicircle::EdgeWindow& w, double a, int beta) {
  require_a(a);
  const double variance = semicircle::edge_variance(w);
  const double center = semicircle::edge_expected_count(w);
  StandardizedStat out;
  out.value = (static_cast<double>(count) - center) / (a * std::sqrt(variance));
  out.kind = StatKind::counting_edge;
  out.beta = beta;
  out.n = w.n;
  out.threshold = w.y;
  out.a = a;
  return out;
}

StandardizedStat standardize_bulk_eigenvalue(double lambda, std::size_t i, std::size_t n) {
  if (n < 2 || i < 1 || i > n) throw DomainError("bulk eigenvalue: need n >= 2 and 1 <= i <= n");
  const double t = semicircle::classical_location(static_cast<double>(i) / static_cast<double>(n));
  if (!(t * t < 4.0)) throw DomainError("bulk eigenvalue: classical location at the spectral edge");
  const double nn = static_cast<double>(n);
  StandardizedStat out;
  out.value = std::sqrt((4.0 - t * t) / 2.0) * (lambda - t) / (std::sqrt(std::log(nn)) / nn);
  out.kind = StatKind::bulk_eigenvalue;
  out.beta = 2;
  out.n = n;
  out.index = i;
  return out;
}

StandardizedStat standardize_edge_eigenvalue(double lambda, const semicircle::EdgeIndex& e, int beta) {
  if (beta != 1 && beta != 2) throw ParameterError("edge eigenvalue: beta must be 1 or 2");
  const double beta_factor = beta == 2 ? 1.0 : 2.0;
  const double scale = semicircle::edge_eigenvalue_scale(e, beta_factor);
  StandardizedStat out;
  out.value = (lambda - semicircle::classical_edge_location(e)) / scale;
  out.kind = StatKind::edge_eigenvalue;
  out.beta = beta;
  out.n = e.n;
  out.index = e.i;
  return out;
}

// --- moments ---------------------------------------------------------------

void MomentAccumulator::add(double x) noexcept {
  MomentAccumulator single;
  single.count_ = 1;
  single.mean_ = x;
  merge(single);
}

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double d_n = delta / n;
  const double d_n2 = d_n * d_n;

  const double m2 = m2_ + other.m2_ + delta * d_n * na * nb;
  const double m3 = m3_ + other.m3_ + delta * d_n2 * na * nb * (na - nb) + 3.0 * d_n * (na * other.m2_ - nb * m2_);
  const double m4 = m4_ + other.m4_ + delta * d_n2 * d_n * na * nb * (na * na - na * nb + nb * nb) +
                    6.0 * d_n2 * (na * na * other.m2_ + nb * nb * m2_) + 4.0 * d_n * (na * other.m3_ - nb * m3_);

  mean_ += d_n * nb;
  count_ += other.count_;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
}

double MomentAccumulator::variance() const noexcept {
  return count_ < 2 ? kNaN : m2_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::skewness() const noexcept {
  if (count_ < 2 || !(m2_ > 0.0)) return kNaN;
  return std::sqrt(static_cast<double>(count_)) * m3_ / std::pow(m2_, 1.5);
}

double MomentAccumulator::excess_kurtosis() const noexcept {
  if (count_ < 2 || !(m2_ > 0.0)) return kNaN;
  return static_cast<double>(count_) * m4_ / (m2_ * m2_) - 3.0;
}

MomentAccumulator accumulate(MomentAccumulator acc, double value) noexcept {
  acc.add(value);
  return acc;
}

MomentAccumulator merge(MomentAccumulator a, const MomentAccumulator& b) noexcept {
  a.merge(b);
  return a;
}

// --- Kolmogorov-Smirnov ----------------------------------------------------

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& reference) {
  if (sorted.empty()) throw SizeError("ks_distance: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = reference(sorted[k]);
    d = std::max({d, static_cast<double>(k + 1) / n - f, f - static_cast<double>(k) / n});
  }
  return d;
}

double ks_distance_normal(std::span<const double> sorted) { return ks_distance(sorted, normal_cdf); }

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw SizeError("ks_two_sample: empty sample");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_two_sample_critical(std::size_t m, std::size_t n, double alpha) {
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double mm = static_cast<double>(m), nn = static_cast<double>(n);
  return c * std::sqrt((mm + nn) / (mm * nn));
}

double ks_one_sample_critical(std::size_t n, double alpha) {
  return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

// --- tails -----------------------------------------------------------------

std::pair<double, double> clopper_pearson(std::size_t k, std::size_t n, double confidence) {
  if (n == 0 || k > n) throw ParameterError("clopper_pearson: need 0 <= k <= n, n > 0");
  const double alpha = 1.0 - confidence;
  const double kk = static_cast<double>(k), nn = static_cast<double>(n);
  const double lo = k == 0 ? 0.0 : boost::math::ibeta_inv(kk, nn - kk + 1.0, alpha / 2.0);
  const double hi = k == n ? 1.0 : boost::math::ibeta_inv(kk + 1.0, nn - kk, 1.0 - alpha / 2.0);
  return {lo, hi};
}

TailEstimate tail_estimate(std::span<const double> values, double a, double x) {
  if (values.empty()) throw SizeError("tail_estimate: empty sample");
  require_a(a);
  if (x == 0.0) throw ParameterError("tail_estimate: x must be nonzero");
  TailEstimate t;
  t.total = values.size();
  t.exceedances = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return exceeds(v, a, x); }));
  t.p_hat = static_cast<double>(t.exceedances) / static_cast<double>(t.total);
  if (t.exceedances == 0) {
    t.ci_lo = 0.0;
    t.ci_hi = std::min(1.0, 3.0 / static_cast<double>(t.total));
  } else {
    std::tie(t.ci_lo, t.ci_hi) = clopper_pearson(t.exceedances, t.total);
  }
  return t;
}

double mdp_diagnostic(double p_hat, double a) {
  require_a(a);
  if (!(p_hat > 0.0 && p_hat <= 1.0)) throw DomainError("mdp_diagnostic: need 0 < p_hat <= 1");
  if (p_hat == 1.0) return 0.0;
  return -std::log(p_hat) / (a * a);
}

MdpDiagnostic mdp_diagnostic(const TailEstimate& tail, double a) {
  if (tail.exceedances == 0) return {mdp_diagnostic(tail.ci_hi, a), true};
  return {mdp_diagnostic(tail.p_hat, a), false};
}

double rate_function(double x) noexcept { return 0.5 * x * x; }

TailProbe::TailProbe(std::vector<double> a_grid, std::vector<double> x_grid)
    : a_grid_(std::move(a_grid)), x_grid_(std::move(x_grid)), counts_(a_grid_.size() * x_grid_.size(), 0) {
  for (const double a : a_grid_) require_a(a);
  for (const double x : x_grid_) {
    if (x == 0.0) throw ParameterError("tail probe: x grid values must be nonzero");
  }
}

void TailProbe::observe(std::span<const double> values) {
  for (std::size_t ai = 0; ai < a_grid_.size(); ++ai) {
    for (std::size_t xi = 0; xi < x_grid_.size(); ++xi) {
      const double a = a_grid_[ai], x = x_grid_[xi];
      counts_[ai * x_grid_.size() + xi] +=
          static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double v) { return exceeds(v, a, x); }));
    }
  }
  total_ += values.size();
}

TailEstimate TailProbe::cell(std::size_t ai, std::size_t xi) const {
  if (total_ == 0) throw SizeError("tail probe: no observations");
  TailEstimate t;
  t.total = total_;
  t.exceedances = exceedances(ai, xi);
  t.p_hat = static_cast<double>(t.exceedances) / static_cast<double>(t.total);
  if (t.exceedances == 0) {
    t.ci_hi = std::min(1.0, 3.0 / static_cast<double>(t.total));
  } else {
    std::tie(t.ci_lo, t.ci_hi) = clopper_pearson(t.exceedances, t.total);
  }
  return t;
}

}  // namespace edgelab::stats
