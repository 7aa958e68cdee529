#include <doctest.h>

#include <cmath>
#include <vector>

#include "edgelab/rng.hpp"

using edgelab::RandomStream;

TEST_SUITE("rng") {
  TEST_CASE("same root seed and stream id reproduce the sequence") {
    RandomStream a(42, 7), b(42, 7);
    for (int k = 0; k < 100; ++k) {
      CHECK(a.normal() == b.normal());
      CHECK(a.uniform() == b.uniform());
    }
    CHECK(a.root_seed() == 42);
    CHECK(a.stream_id() == 7);
  }

  TEST_CASE("different stream ids give different sequences") {
    RandomStream a(42, 0), b(42, 1), c(43, 0);
    int same_b = 0, same_c = 0;
    for (int k = 0; k < 50; ++k) {
      const auto x = a.engine()();
      same_b += x == b.engine()();
      same_c += x == c.engine()();
    }
    CHECK(same_b == 0);
    CHECK(same_c == 0);
  }

  TEST_CASE("uniform lies in [0, 1) and uniform_int in its closed range") {
    RandomStream rng(1, 2);
    for (int k = 0; k < 10000; ++k) {
      const double u = rng.uniform();
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      const auto j = rng.uniform_int(-2, 2);
      REQUIRE(j >= -2);
      REQUIRE(j <= 2);
    }
  }

  TEST_CASE("chi variates have E[chi^2] = dof") {
    RandomStream rng(5, 0);
    for (const double dof : {1.0, 2.5, 40.0}) {
      double sum = 0.0;
      const int reps = 40000;
      for (int k = 0; k < reps; ++k) {
        const double c = rng.chi(dof);
        REQUIRE(c >= 0.0);
        sum += c * c;
      }
      // Var(chi^2) = 2 dof; five standard errors.
      CHECK(sum / reps == doctest::Approx(dof).epsilon(5.0 * std::sqrt(2.0 * dof / reps) / dof));
    }
  }
}
