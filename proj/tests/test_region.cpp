#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "smclab/error.hpp"
#include "smclab/region.hpp"
#include "smclab/returns.hpp"
#include "smclab/vol_stats.hpp"

using namespace smclab;
using doctest::Approx;

TEST_CASE("pure_smc_pair examples") {
  auto v = pure_smc_pair(-0.25, 0.0, 3.0);
  CHECK(v.long_smc == Approx(0.430780618347).epsilon(1e-11));
  CHECK(v.short_smc == Approx(0.123080176671).epsilon(1e-11));
  CHECK(std::abs(v.long_smc - 0.4306) < 5e-4);
  CHECK(std::abs(v.short_smc - 0.1231) < 5e-5);

  v = pure_smc_pair(-0.25, 0.0, 2.0);
  // Both sides are 7 - 4 sqrt(3).
  const double closed = 7.0 - 4.0 * std::numbers::sqrt3;
  CHECK(std::abs(v.long_smc - closed) < 1e-14);
  CHECK(std::abs(v.short_smc - closed) < 1e-14);

  for (double c : {-0.3, 0.0, 0.1})
    for (double b : {2.0, 3.0}) {
      v = pure_smc_pair(c, c, b);
      CHECK(std::abs(v.long_smc) < 1e-15);
      CHECK(std::abs(v.short_smc) < 1e-15);
    }
  CHECK_THROWS_AS(pure_smc_pair(0.5, 0.0, 2.0), DomainError);
}

TEST_CASE("pure smc agrees with the long-double oracle and with smc()") {
  std::mt19937_64 rng(73);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  for (int t = 0; t < 5000; ++t) {
    const double a = u(rng), b = u(rng);
    const auto v = pure_smc_pair(a, b, 3.0);
    const auto o = oracle::two_day(a, b, 3.0L);
    CHECK(std::abs(v.long_smc - double(o.long_smc)) < 1e-12);
    CHECK(std::abs(v.short_smc - double(o.short_smc)) < 1e-12);
    const std::vector<double> idx{a, b}, up{3 * a, 3 * b}, down{-3 * a, -3 * b};
    CHECK(std::max(0.0, v.long_smc) == Approx(smc({up, idx, 3.0})).epsilon(1e-12));
    CHECK(std::max(0.0, v.short_smc) == Approx(smc({down, idx, -3.0})).epsilon(1e-12));
  }
}

TEST_CASE("region_membership examples") {
  CHECK(region_membership(-0.25, 0.0, 3.0));
  CHECK_FALSE(region_membership(-0.08, 0.0, 3.0));
  CHECK_FALSE(region_membership(0.1, 0.1, 3.0));
  CHECK_FALSE(region_membership(-0.25, 0.0, 2.0));  // equality point
  CHECK_FALSE(region_membership(-0.2, 0.05, 1.0));
}

TEST_CASE("strict comparison tolerance") {
  CHECK_FALSE(long_exceeds_short(1e-16, -1e-16));
  CHECK(long_exceeds_short(0.2, 0.1));
  CHECK_FALSE(long_exceeds_short(0.1, 0.1));
}

TEST_CASE("property: membership is symmetric in the two days") {
  std::mt19937_64 rng(79);
  for (double b : {2.0, 3.0}) {
    std::uniform_real_distribution<double> u(-1.0 / b + 1e-3, 1.0 / b - 1e-3);
    for (int t = 0; t < 20000; ++t) {
      const double r1 = u(rng), r2 = u(rng);
      CHECK(region_membership(r1, r2, b) == region_membership(r2, r1, b));
    }
  }
}

TEST_CASE("beta 2 boundary passes through (-0.25, 0)") {
  const auto curve = equality_boundary(2.0);
  CHECK(curve.status.empty());
  CHECK(curve.box == 0.5);
  REQUIRE(!curve.points.empty());
  MESSAGE("beta 2: " << curve.points.size() << " points, " << curve.unresolved << " unresolved");
  CHECK(curve.unresolved < curve.points.size() / 100);
  double best = 1.0;
  for (const auto& p : curve.points) best = std::min(best, std::hypot(p.r1 + 0.25, p.r2));
  CHECK(best <= 1e-6);
  for (const auto& p : curve.points) {
    CHECK(std::abs(p.r1) < curve.box);
    CHECK(std::abs(p.r2) < curve.box);
    const auto v = pure_smc_pair(p.r1, p.r2, 2.0);
    CHECK(std::abs(v.long_smc - v.short_smc) <= kBisectionTolerance);
  }
  for (std::size_t i = 1; i < curve.points.size(); ++i)
    CHECK(curve.points[i].r1 - curve.points[i].r2 >= curve.points[i - 1].r1 - curve.points[i - 1].r2);
}

TEST_CASE("beta 3 axis crossing") {
  const auto curve = equality_boundary(3.0);
  REQUIRE(!curve.points.empty());
  bool found = false;
  for (const auto& p : curve.points)
    if (p.r2 == 0.0 && p.r1 < 0) {
      found = true;
      CHECK(p.r1 >= -0.1125);
      CHECK(p.r1 <= -0.1105);
    }
  CHECK(found);
  const double o = double(oracle::axis_crossing(3.0L, -0.3L, -0.01L));
  CHECK(o == Approx(-1.0 / 9.0).epsilon(1e-9));
  const double o2 = double(oracle::axis_crossing(2.0L, -0.45L, -0.01L));
  CHECK(o2 == Approx(-0.25).epsilon(1e-9));
}

TEST_CASE("beta <= 1 has no boundary") {
  for (double b : {1.0, 0.5, -1.0}) {
    const auto curve = equality_boundary(b);
    CHECK(curve.points.empty());
    CHECK_FALSE(curve.status.empty());
  }
}

TEST_CASE("boundary points are symmetric about the diagonal") {
  const auto curve = equality_boundary(3.0, 100);
  for (const auto& p : curve.points) {
    bool mirrored = false;
    for (const auto& q : curve.points)
      if (std::abs(q.r1 - p.r2) < 1e-12 && std::abs(q.r2 - p.r1) < 1e-12) mirrored = true;
    CHECK(mirrored);
  }
}

TEST_CASE("boundary moves toward the origin as leverage grows") {
  int compared = 0;
  for (int k = 0; k < 72; ++k) {
    const double theta = 2 * std::numbers::pi * k / 72.0;
    const auto d2 = boundary_ray_crossing(2.0, theta);
    const auto d3 = boundary_ray_crossing(3.0, theta);
    if (d2 && d3) {
      ++compared;
      CHECK(*d3 < *d2);
    }
  }
  CHECK(compared > 0);
  const auto axis = boundary_ray_crossing(3.0, std::numbers::pi);
  REQUIRE(axis);
  CHECK(*axis == Approx(1.0 / 9.0).epsilon(1e-8));
}

TEST_CASE("region samples") {
  const auto g = symmetric_grid(0.3, 10);
  REQUIRE(g.size() == 11);
  CHECK(g[5] == 0.0);
  CHECK(g.front() == -0.3);
  CHECK(g.back() == 0.3);

  const auto fast = region_samples(3.0, 60);
  const auto ref = region_samples_reference(3.0, 60);
  REQUIRE(fast.size() == 61 * 61);
  REQUIRE(ref.size() == fast.size());
  std::size_t members = 0;
  for (std::size_t i = 0; i < fast.size(); ++i) {
    CHECK(fast[i].r1 == ref[i].r1);
    CHECK(fast[i].r2 == ref[i].r2);
    CHECK(fast[i].member == ref[i].member);
    CHECK(fast[i].member == region_membership(fast[i].r1, fast[i].r2, 3.0));
    members += fast[i].member;
  }
  CHECK(members > 0);
  CHECK(members < fast.size() / 2);
  CHECK(fast[1].r2 == fast[0].r2);  // r2 outer
}
