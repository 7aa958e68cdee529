#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "edgelab/error.hpp"
#include "edgelab/rng.hpp"
#include "edgelab/statistics.hpp"
#include "oracles.hpp"

using namespace edgelab;
using namespace edgelab::stats;
using std::numbers::pi;

namespace {

std::vector<double> skewed_sample(std::uint64_t seed, std::size_t n) {
  RandomStream rng(seed, 0);
  std::vector<double> x(n);
  for (auto& v : x) v = -std::log1p(-rng.uniform()) + 1e3;
  return x;
}

// sup |F_n - F| over both one-sided limits at every sample point, by counting.
double brute_ks(const std::vector<double>& x, double (*f)(double) noexcept) {
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (const double v : x) {
    const double below = static_cast<double>(std::count_if(x.begin(), x.end(), [&](double u) { return u < v; }));
    const double at_or_below = static_cast<double>(std::count_if(x.begin(), x.end(), [&](double u) { return u <= v; }));
    d = std::max({d, std::fabs(at_or_below / n - f(v)), std::fabs(below / n - f(v))});
  }
  return d;
}

double brute_ks2(const std::vector<double>& a, const std::vector<double>& b) {
  auto ecdf = [](const std::vector<double>& s, double t) {
    return static_cast<double>(std::count_if(s.begin(), s.end(), [&](double u) { return u <= t; })) / static_cast<double>(s.size());
  };
  double d = 0.0;
  for (const auto* s : {&a, &b}) {
    for (const double t : *s) d = std::max(d, std::fabs(ecdf(a, t) - ecdf(b, t)));
  }
  return d;
}

}  // namespace

TEST_SUITE("statistics") {
  TEST_CASE("streaming moments match two-pass moments") {
    const auto x = skewed_sample(1, 5000);
    MomentAccumulator acc;
    for (const double v : x) acc.add(v);
    const auto ref = oracle::two_pass_moments(x);
    CHECK(acc.count() == 5000);
    CHECK(acc.mean() == doctest::Approx(ref.mean).epsilon(1e-14));
    CHECK(acc.variance() == doctest::Approx(ref.variance).epsilon(1e-10));
    CHECK(acc.skewness() == doctest::Approx(ref.skewness).epsilon(1e-9));
    CHECK(acc.excess_kurtosis() == doctest::Approx(ref.excess_kurtosis).epsilon(1e-9));
  }

  TEST_CASE("merging partial accumulators equals one pass") {
    const auto x = skewed_sample(2, 3001);
    MomentAccumulator whole;
    for (const double v : x) whole.add(v);
    for (const std::size_t parts : {2u, 7u, 64u}) {
      MomentAccumulator merged;
      for (std::size_t p = 0; p < parts; ++p) {
        MomentAccumulator part;
        for (std::size_t r = p * x.size() / parts; r < (p + 1) * x.size() / parts; ++r) part.add(x[r]);
        merged = merge(merged, part);
      }
      CHECK(merged.count() == whole.count());
      CHECK(merged.mean() == doctest::Approx(whole.mean()).epsilon(1e-14));
      CHECK(merged.m2() == doctest::Approx(whole.m2()).epsilon(1e-10));
      CHECK(merged.m3() == doctest::Approx(whole.m3()).epsilon(1e-8));
      CHECK(merged.m4() == doctest::Approx(whole.m4()).epsilon(1e-9));
    }
    CHECK(accumulate(MomentAccumulator{}, 3.0).mean() == 3.0);
  }

  TEST_CASE("moments of degenerate samples are undefined") {
    MomentAccumulator one;
    one.add(1.0);
    CHECK(std::isnan(one.variance()));
    MomentAccumulator flat;
    for (int k = 0; k < 5; ++k) flat.add(2.0);
    CHECK(flat.variance() == 0.0);
    CHECK(std::isnan(flat.skewness()));
    CHECK(std::isnan(flat.excess_kurtosis()));
  }

  TEST_CASE("normal cdf") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-15));
    CHECK(normal_cdf(-1.96) == doctest::Approx(0.024997895148220435).epsilon(1e-14));
    CHECK(normal_cdf(3.5) == doctest::Approx(0.9997673709209645).epsilon(1e-15));
  }

  TEST_CASE("one-sample KS matches brute force") {
    RandomStream rng(3, 0);
    for (const std::size_t n : {1u, 2u, 10u, 333u}) {
      std::vector<double> x(n);
      for (auto& v : x) v = 1.3 * rng.normal() + 0.2;
      std::sort(x.begin(), x.end());
      CHECK(ks_distance_normal(x) == doctest::Approx(brute_ks(x, normal_cdf)).epsilon(1e-14));
    }
    const std::vector<double> zero = {0.0};
    CHECK(ks_distance_normal(zero) == 0.5);
    CHECK_THROWS_AS(ks_distance_normal({}), SizeError);
  }

  TEST_CASE("two-sample KS matches brute force, with ties") {
    RandomStream rng(4, 0);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> a(1 + rng.uniform_int(0, 60)), b(1 + rng.uniform_int(0, 60));
      for (auto& v : a) v = static_cast<double>(rng.uniform_int(0, 9));
      for (auto& v : b) v = static_cast<double>(rng.uniform_int(0, 12));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(ks_two_sample(a, b) == doctest::Approx(brute_ks2(a, b)).epsilon(1e-15));
    }
    const std::vector<double> same = {1.0, 2.0, 3.0};
    CHECK(ks_two_sample(same, same) == 0.0);
    CHECK_THROWS_AS(ks_two_sample({}, same), SizeError);
  }

  TEST_CASE("KS critical values") {
    // c(0.01) = sqrt(-ln(0.005) / 2).
    CHECK(ks_two_sample_critical(4000, 4000) == doctest::Approx(1.6276236307187293 * std::sqrt(2.0 / 4000.0)).epsilon(1e-14));
    CHECK(ks_one_sample_critical(100) == doctest::Approx(0.16276236307187293).epsilon(1e-14));
  }

  TEST_CASE("Clopper-Pearson interval") {
    const auto [lo, hi] = clopper_pearson(3, 10);
    CHECK(lo == doctest::Approx(0.06673951117773447).epsilon(1e-12));
    CHECK(hi == doctest::Approx(0.6524528500599973).epsilon(1e-12));
    CHECK(clopper_pearson(0, 10).first == 0.0);
    CHECK(clopper_pearson(10, 10).second == 1.0);
    CHECK_THROWS_AS(clopper_pearson(11, 10), ParameterError);
  }

  TEST_CASE("tail estimates use >= for positive x and <= for negative x") {
    const std::vector<double> v = {-2.0, -1.0, 0.0, 1.0, 2.0, 3.0};
    const auto up = tail_estimate(v, 2.0, 0.5);  // v / 2 >= 0.5: {1, 2, 3}
    CHECK(up.exceedances == 3);
    CHECK(up.total == 6);
    CHECK(up.p_hat == 0.5);
    CHECK(up.ci_lo < 0.5);
    CHECK(up.ci_hi > 0.5);
    const auto down = tail_estimate(v, 1.0, -1.0);  // v <= -1: {-2, -1}
    CHECK(down.exceedances == 2);
    const auto none = tail_estimate(v, 1.0, 10.0);
    CHECK(none.exceedances == 0);
    CHECK(none.ci_lo == 0.0);
    CHECK(none.ci_hi == 0.5);  // 3 / 6
    CHECK_THROWS_AS(tail_estimate({}, 1.0, 1.0), SizeError);
    CHECK_THROWS_AS(tail_estimate(v, 0.9, 1.0), ParameterError);
    CHECK_THROWS_AS(tail_estimate(v, 1.0, 0.0), ParameterError);
  }

  TEST_CASE("moderate deviation diagnostic") {
    CHECK(mdp_diagnostic(std::exp(-2.0), 2.0) == doctest::Approx(0.5));
    CHECK(mdp_diagnostic(1.0, 3.0) == 0.0);
    CHECK_THROWS_AS(mdp_diagnostic(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(mdp_diagnostic(0.5, 0.5), ParameterError);
    TailEstimate zero;
    zero.total = 1000;
    zero.ci_hi = 0.003;
    const auto flagged = mdp_diagnostic(zero, 1.5);
    CHECK(flagged.lower_bound);
    CHECK(flagged.value == doctest::Approx(-std::log(0.003) / 2.25));
    CHECK(rate_function(0.0) == 0.0);
    CHECK(rate_function(-1.0) == 0.5);
  }

  TEST_CASE("tail probe equals per-cell tail estimates") {
    const auto x = skewed_sample(5, 500);
    std::vector<double> z(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) z[k] = x[k] - 1001.0;
    TailProbe probe({1.0, 1.5}, {-0.5, 0.5, 2.0});
    probe.observe(std::span(z).subspan(0, 200));
    probe.observe(std::span(z).subspan(200));
    CHECK(probe.total() == 500);
    for (std::size_t ai = 0; ai < 2; ++ai) {
      for (std::size_t xi = 0; xi < 3; ++xi) {
        const auto direct = tail_estimate(z, probe.a_grid()[ai], probe.x_grid()[xi]);
        const auto cell = probe.cell(ai, xi);
        CHECK(cell.exceedances == direct.exceedances);
        CHECK(cell.ci_lo == direct.ci_lo);
        CHECK(cell.ci_hi == direct.ci_hi);
      }
    }
    CHECK_THROWS_AS(TailProbe({0.5}, {1.0}), ParameterError);
    CHECK_THROWS_AS(TailProbe({1.0}, {0.0}), ParameterError);
    CHECK_THROWS_AS(static_cast<void>(TailProbe({1.0}, {1.0}).cell(0, 0)), SizeError);
  }

  TEST_CASE("counting standardization") {
    const auto w = semicircle::EdgeWindow::from_scale(2000, 50.0);
    const double mean = 100.0 / (3.0 * pi);
    const double sd = std::sqrt(std::log(50.0) / (2.0 * pi * pi));
    const auto z = standardize_counting_edge(12, w, 1.5, 1);
    CHECK(z.value == doctest::Approx((12.0 - mean) / (1.5 * sd)).epsilon(1e-13));
    CHECK(z.kind == StatKind::counting_edge);
    CHECK(z.beta == 1);
    CHECK(*z.threshold == w.y);
    CHECK_THROWS_AS(standardize_counting_edge(1, w, 0.5), ParameterError);
    CHECK_THROWS_AS(standardize_counting_edge(1, semicircle::EdgeWindow::from_scale(2000, 0.5), 1.0), DomainError);
  }

  TEST_CASE("bulk standardization") {
    CHECK(standardize_bulk_eigenvalue(0.0, 500, 1000).value == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    const double t = semicircle::classical_location(0.25);
    const auto x = standardize_bulk_eigenvalue(t + 0.01, 250, 1000);
    CHECK(x.value == doctest::Approx(std::sqrt((4.0 - t * t) / 2.0) * 0.01 * 1000.0 / std::sqrt(std::log(1000.0))).epsilon(1e-9));
    CHECK_THROWS_AS(standardize_bulk_eigenvalue(0.0, 1000, 1000), DomainError);
    CHECK_THROWS_AS(standardize_bulk_eigenvalue(0.0, 0, 1000), DomainError);
  }

  TEST_CASE("edge eigenvalue standardization") {
    const semicircle::EdgeIndex e{2000, 95};
    const double center = semicircle::classical_edge_location(e);
    CHECK(standardize_edge_eigenvalue(center, e, 2).value == 0.0);
    const double gue = standardize_edge_eigenvalue(center + 1e-3, e, 2).value;
    const double goe = standardize_edge_eigenvalue(center + 1e-3, e, 1).value;
    CHECK(gue == doctest::Approx(1e-3 / semicircle::edge_eigenvalue_scale(e)).epsilon(1e-12));
    CHECK(goe == doctest::Approx(gue / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(*standardize_edge_eigenvalue(center, e, 1).index == 95);
    CHECK_THROWS_AS(standardize_edge_eigenvalue(center, e, 4), ParameterError);
    CHECK_THROWS_AS(standardize_edge_eigenvalue(center, semicircle::EdgeIndex{2000, 1}, 2), DomainError);
  }

  TEST_CASE("quantile location and edge standardization describe the same event") {
    RandomStream rng(6, 0);
    for (int rep = 0; rep < 1000; ++rep) {
      const semicircle::EdgeIndex e{4096, static_cast<std::size_t>(rng.uniform_int(2, 400))};
      const double a = 1.0 + 2.0 * rng.uniform();
      const double x = 4.0 * rng.uniform() - 2.0;
      const double lambda = semicircle::classical_edge_location(e) + 6.0 * (rng.uniform() - 0.5) * semicircle::edge_eigenvalue_scale(e) * a;
      const double y = semicircle::mdp_quantile_location(e, a, x);
      if (std::fabs(lambda - y) < 1e-12) continue;
      CHECK((standardize_edge_eigenvalue(lambda, e, 2).value / a <= x) == (lambda <= y));
    }
  }
}
