#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "edgelab/semicircle.hpp"

namespace edgelab::stats {

enum class StatKind { counting_edge, bulk_eigenvalue, edge_eigenvalue };

/// A spectral observable after centering and scaling by its leading-order law.
struct StandardizedStat {
  double value = 0.0;
  StatKind kind = StatKind::counting_edge;
  int beta = 2;
  std::size_t n = 0;
  std::optional<std::size_t> index;  // i for eigenvalue statistics
  std::optional<double> threshold;   // y for counting statistics
  double a = 1.0;
};

/// Z_n = (N - (2/3pi) s) / (a sqrt((1/2pi^2) log s)). Throws ParameterError for
/// a < 1 and DomainError when s <= 1.
StandardizedStat standardize_counting_edge(std::size_t count, const semicircle::EdgeWindow& w, double a, int beta = 2);

/// X_n = sqrt((4 - t^2) / 2) (lambda_i - t) / (sqrt(log n) / n), t = classical_location(i / n).
/// Throws DomainError when t^2 >= 4 or n < 2.
StandardizedStat standardize_bulk_eigenvalue(double lambda, std::size_t i, std::size_t n);

/// Z_{n,i} = (lambda_{n-i} - classical_edge_location) / edge_eigenvalue_scale(e, beta_factor),
/// beta_factor 1 for beta = 2 and 2 for beta = 1. Throws DomainError for i < 2.
StandardizedStat standardize_edge_eigenvalue(double lambda, const semicircle::EdgeIndex& e, int beta);

/// Streaming count, mean and central moment sums M2..M4, mergeable across workers.
class MomentAccumulator {
 public:
  void add(double x) noexcept;
  void merge(const MomentAccumulator& other) noexcept;

  [[nodiscard]] std::size_t count() const noexcept { return count_; }
  [[nodiscard]] double mean() const noexcept { return mean_; }
  [[nodiscard]] double m2() const noexcept { return m2_; }
  [[nodiscard]] double m3() const noexcept { return m3_; }
  [[nodiscard]] double m4() const noexcept { return m4_; }

  /// Unbiased variance M2 / (count - 1); NaN for count < 2.
  [[nodiscard]] double variance() const noexcept;
  /// NaN unless count >= 2 and M2 > 0.
  [[nodiscard]] double skewness() const noexcept;
  [[nodiscard]] double excess_kurtosis() const noexcept;

 private:
  std::size_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

MomentAccumulator accumulate(MomentAccumulator acc, double value) noexcept;
MomentAccumulator merge(MomentAccumulator a, const MomentAccumulator& b) noexcept;

/// Standard normal CDF.
double normal_cdf(double x) noexcept;

/// sup |F_n - F| for a sorted sample. Throws SizeError on an empty sample.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& reference);

/// ks_distance against the standard normal.
double ks_distance_normal(std::span<const double> sorted);

/// Two-sample statistic sup |F_a - F_b| for sorted samples.
double ks_two_sample(std::span<const double> a_sorted, std::span<const double> b_sorted);

/// Asymptotic critical value of the two-sample statistic at level alpha.
double ks_two_sample_critical(std::size_t m, std::size_t n, double alpha = 0.01);

/// Asymptotic critical value of the one-sample statistic at level alpha.
double ks_one_sample_critical(std::size_t n, double alpha = 0.01);

struct TailEstimate {
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
  std::size_t exceedances = 0;
  std::size_t total = 0;
};

/// Exact binomial interval for k successes in n trials.
std::pair<double, double> clopper_pearson(std::size_t k, std::size_t n, double confidence = 0.95);

/// Fraction of values with value / a >= x (x > 0) or value / a <= x (x < 0), with a
/// 95% Clopper-Pearson interval; zero exceedances report [0, 3 / total].
/// Throws SizeError on empty input, ParameterError for a < 1 or x == 0.
TailEstimate tail_estimate(std::span<const double> values, double a, double x);

struct MdpDiagnostic {
  double value = 0.0;
  bool lower_bound = false;  // p_hat was 0; value uses the interval's upper end
};

/// -log(p_hat) / a^2. Throws DomainError unless 0 < p_hat <= 1.
double mdp_diagnostic(double p_hat, double a);

/// Diagnostic from an estimate; zero exceedances fall back to ci_hi and set the flag.
MdpDiagnostic mdp_diagnostic(const TailEstimate& tail, double a);

/// x^2 / 2.
double rate_function(double x) noexcept;

/// Exceedance counts over an (a, x) grid for one sample of statistic values.
class TailProbe {
 public:
  /// Throws ParameterError if any a < 1 or any x == 0.
  TailProbe(std::vector<double> a_grid, std::vector<double> x_grid);

  void observe(std::span<const double> values);

  [[nodiscard]] const std::vector<double>& a_grid() const noexcept { return a_grid_; }
  [[nodiscard]] const std::vector<double>& x_grid() const noexcept { return x_grid_; }
  [[nodiscard]] std::size_t total() const noexcept { return total_; }
  [[nodiscard]] std::size_t exceedances(std::size_t ai, std::size_t xi) const { return counts_.at(ai * x_grid_.size() + xi); }
  [[nodiscard]] TailEstimate cell(std::size_t ai, std::size_t xi) const;

 private:
  std::vector<double> a_grid_;
  std::vector<double> x_grid_;
  std::vector<std::size_t> counts_;
  std::size_t total_ = 0;
};

}  // namespace edgelab::stats
