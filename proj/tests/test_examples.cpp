// Monte Carlo examples beyond the acceptance runner.

#include <doctest.h>

#include <algorithm>

#include "edgelab/experiments.hpp"
#include "edgelab/statistics.hpp"

using namespace edgelab;
using namespace edgelab::exp;

namespace {

std::vector<double> standardized(const ExperimentReport& report) {
  std::vector<double> v;
  for (const auto& row : report.rows) v.push_back(row.standardized_value);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_SUITE("examples") {
  TEST_CASE("bulk eigenvalue of GUE at n = 1000 is close to normal") {
    ExperimentConfig c;
    c.ensemble = "tridiag-gue";
    c.n = 1000;
    c.replications = 10000;
    c.workers = 0;
    c.query.kind = QueryKind::bulk_index;
    c.query.fraction = 0.5;
    const auto report = run_eigenvalue_clt(c);
    INFO(report.check("ks_normal").detail);
    CHECK(report.ks < 0.05);
  }

  TEST_CASE("tridiagonal and dense samplers agree at n = 64") {
    ExperimentConfig c;
    c.n = 64;
    c.replications = 4000;
    c.workers = 0;
    for (const auto& [fast, dense] : {std::pair{"tridiag-gue", "gue"}, std::pair{"tridiag-goe", "goe"}}) {
      c.ensemble = fast;
      c.query.kind = QueryKind::edge_window;
      const auto count_fast = run_counting_clt(c);
      c.query.kind = QueryKind::edge_index;
      const auto edge_fast = run_eigenvalue_clt(c);
      c.ensemble = dense;
      c.seed += 1;
      c.query.kind = QueryKind::edge_window;
      const auto count_dense = run_counting_clt(c);
      c.query.kind = QueryKind::edge_index;
      const auto edge_dense = run_eigenvalue_clt(c);
      c.seed += 1;
      INFO(fast);
      CHECK(stats::ks_two_sample(standardized(count_fast), standardized(count_dense)) < 0.05);
      CHECK(stats::ks_two_sample(standardized(edge_fast), standardized(edge_dense)) < 0.05);
    }
  }
}
