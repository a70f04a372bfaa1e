#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smclab/error.hpp"
#include "smclab/returns.hpp"

using namespace smclab;
using doctest::Approx;

TEST_CASE("compound_return examples") {
  CHECK(compound_return(std::vector<double>{-0.01, 0.01}) == Approx(-0.0001).epsilon(1e-12));
  CHECK(compound_return(std::vector<double>{0, 0, 0}) == 0.0);
  CHECK(compound_return(std::vector<double>{0.01, 0.01}) == Approx(0.0201).epsilon(1e-12));
}

TEST_CASE("compound_return errors") {
  CHECK_THROWS_AS(compound_return(std::vector<double>{}), InvalidInput);
  CHECK_THROWS_AS(compound_return(std::vector<double>{0.1, -1.0}), DomainError);
  CHECK_THROWS_AS(compound_return(std::vector<double>{-1.5}), DomainError);
}

TEST_CASE("compound_return matches a long-double product over 252 days") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = oracle::uniform_vector(rng, 252, -0.05, 0.05);
    const double want = double(oracle::compound(r));
    CHECK(std::abs(compound_return(r) - want) <= 1e-13 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("geometric_mean_return examples") {
  CHECK(geometric_mean_return(0.21, 2) == Approx(0.1).epsilon(1e-14));
  CHECK(geometric_mean_return(0.0, 252) == 0.0);
  // 50-digit value 0.00119160063243008...
  CHECK(std::abs(geometric_mean_return(0.35, 252) - 0.0011916006324300830) < 1e-16);
  CHECK_THROWS_AS(geometric_mean_return(-1.0, 3), DomainError);
  CHECK_THROWS_AS(geometric_mean_return(0.1, 0), InvalidInput);
}

TEST_CASE("log_returns examples") {
  CHECK(log_returns(std::vector<double>{0.0})[0] == 0.0);
  CHECK(log_returns(std::vector<double>{std::expm1(0.1)})[0] == Approx(0.1).epsilon(1e-15));
  CHECK(log_returns(std::vector<double>{-0.5})[0] == Approx(-0.69314718055994531).epsilon(1e-15));
  CHECK_THROWS_AS(log_returns(std::vector<double>{-1.0}), DomainError);
}

TEST_CASE("leveraged_daily_compound examples") {
  CHECK(leveraged_daily_compound(std::vector<double>{0.01, 0.01}, 2) == Approx(0.0404).epsilon(1e-12));
  CHECK(leveraged_daily_compound(std::vector<double>{-0.40}, 3) == -1.0);
  CHECK(leveraged_daily_compound(std::vector<double>{0.1, 0.1}, 1) == Approx(0.21).epsilon(1e-14));
  CHECK_THROWS_AS(leveraged_daily_compound(std::vector<double>{}, 2), InvalidInput);
}

TEST_CASE("a wiped-out day stays wiped out") {
  CHECK(leveraged_daily_compound(std::vector<double>{0.5, -0.34, 0.5, 0.5}, 3) == -1.0);
  CHECK(leveraged_daily_compound(std::vector<double>{0.2, 0.4}, -3) == -1.0);
}

TEST_CASE("property: geometric mean round trip") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> total(-0.95, 3.0);
  std::uniform_int_distribution<int> days(1, 2000);
  for (int i = 0; i < 5000; ++i) {
    const double t = total(rng);
    const int p = days(rng);
    const std::vector<double> copies(std::size_t(p), geometric_mean_return(t, p));
    CHECK(std::abs(compound_return(copies) - t) <= 1e-12 * std::max(1.0, std::abs(t)));
  }
}

TEST_CASE("property: permutation invariance and beta = 1 identity") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto r = oracle::uniform_vector(rng, 2 + i % 60, -0.3, 0.3);
    const double c = compound_return(r);
    const double l = leveraged_daily_compound(r, 2.5);
    CHECK(leveraged_daily_compound(r, 1.0) == c);  // exact
    std::shuffle(r.begin(), r.end(), rng);
    CHECK(compound_return(r) == Approx(c).epsilon(1e-13));
    CHECK(leveraged_daily_compound(r, 2.5) == Approx(l).epsilon(1e-13));
    CHECK(leveraged_daily_compound(r, -3.5) >= -1.0);
  }
}
