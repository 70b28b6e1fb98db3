#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "avgpower/baseline_cp.hpp"
#include "doctest.h"

using namespace avgpower;

TEST_SUITE("clopper_pearson") {
  TEST_CASE("boundaries") {
    const BinomialModel model(100);
    CHECK(clopper_pearson(0, model, 0.05).lower == 0.0);
    CHECK(clopper_pearson(100, model, 0.05).upper == 1.0);
    CHECK_THROWS_AS(clopper_pearson(101, model, 0.05), std::domain_error);
    CHECK_THROWS_AS(clopper_pearson(5, model, 0.0), std::invalid_argument);
  }

  TEST_CASE("x = 50 of 100") {
    // Independent endpoints from the beta quantile identity.
    const auto cp = clopper_pearson(50, BinomialModel(100), 0.05);
    CHECK(std::abs(cp.lower - 0.39832112950330106) <= 1e-6);
    CHECK(std::abs(cp.upper - 0.6016788704966989) <= 1e-6);
  }

  TEST_CASE("agrees with inverse incomplete beta") {
    for (int n : {1, 10, 37, 100}) {
      for (double level : {0.01, 0.05, 0.2}) {
        for (int x = 0; x <= n; ++x) {
          const auto cp = clopper_pearson(x, BinomialModel(n), level);
          const double lower = x == 0 ? 0.0 : boost::math::ibeta_inv(x, n - x + 1.0, level / 2);
          const double upper = x == n ? 1.0 : boost::math::ibeta_inv(x + 1.0, n - x, 1 - level / 2);
          CHECK(std::abs(cp.lower - lower) <= 1e-9);
          CHECK(std::abs(cp.upper - upper) <= 1e-9);
        }
      }
    }
  }

  TEST_CASE("reflection symmetry and monotonicity") {
    const BinomialModel model(100);
    for (int x = 0; x <= 100; ++x) {
      const auto a = clopper_pearson(x, model, 0.05);
      const auto b = clopper_pearson(100 - x, model, 0.05);
      CHECK(std::abs(a.lower - (1.0 - b.upper)) <= 1e-10);
      CHECK(std::abs(a.upper - (1.0 - b.lower)) <= 1e-10);
      if (x > 0) {
        const auto prev = clopper_pearson(x - 1, model, 0.05);
        CHECK(a.lower >= prev.lower);
        CHECK(a.upper >= prev.upper);
      }
    }
  }

  TEST_CASE("exact coverage on a fine grid") {
    const BinomialModel model(100);
    std::vector<CpInterval> intervals;
    for (int x = 0; x <= 100; ++x) intervals.push_back(clopper_pearson(x, model, 0.05));
    for (int k = 1; k < 2000; ++k) {
      const double theta = k / 2000.0;
      double cov = 0.0;
      for (const auto& cp : intervals) {
        if (cp.lower <= theta && theta <= cp.upper) cov += binom_pmf(cp.x, model, theta);
      }
      CHECK(cov >= 0.95);
    }
  }
}

TEST_SUITE("compare_lengths") {
  TEST_CASE("non-informative regions are no longer than Clopper-Pearson on average") {
    const auto m = build_decision_matrix(TestConfig(0.05, BinomialModel(100), BetaPrior(0.5, 0.5)));
    const auto cmp = compare_lengths(m, 0.05);
    CHECK(cmp.entries.size() == 101);
    CHECK(cmp.grid_step == doctest::Approx(0.002));
    CHECK(cmp.mean_proposed_length <= cmp.mean_cp_length + cmp.grid_step);
  }

  TEST_CASE("informative interval at x = 50 is shorter") {
    const auto m = build_decision_matrix(TestConfig(0.05, BinomialModel(100), BetaPrior(100, 100)));
    const auto cmp = compare_lengths(m, 0.05);
    CHECK(cmp.entries[50].proposed.length() < cmp.entries[50].cp.length());
  }

  TEST_CASE("degenerate level accepts everything") {
    const TestConfig cfg(1e-300, BinomialModel(100), BetaPrior(0.5, 0.5));
    const auto m = build_decision_matrix(cfg);
    const auto cmp = compare_lengths(m, 0.05);
    for (const auto& e : cmp.entries) CHECK(e.proposed.length() == doctest::Approx(0.996));
  }
}
