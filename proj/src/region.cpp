#include "smclab/region.hpp"

#include <algorithm>
#include <cmath>

#include "smclab/error.hpp"

namespace smclab {

namespace {

// long - short on a 2-day window; both sides uncensored.
double gap(Rate r1, Rate r2, double beta) {
  const auto s = pure_smc_pair(r1, r2, beta);
  return s.long_smc - s.short_smc;
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Shrinks [lo, hi] around a sign change of f until |f(mid)| <= tol; nullopt
// when the interval collapses first (f too steep for double precision).
template <class F>
std::optional<double> bisect(F f, double lo, double hi, double tol) {
  const int s_lo = sign_of(f(lo));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (std::abs(v) <= tol) return mid;
    if (mid == lo || mid == hi) break;
    if (sign_of(v) == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  return std::nullopt;
}

double admissible_limit(double beta) { return std::min(1.0, 1.0 / beta); }
double admissible_half_width(double beta) { return admissible_limit(beta) - kBoxMargin; }

}  // namespace

SmcPair pure_smc_window(std::span<const Rate> returns, double beta) {
  if (returns.empty()) throw InvalidInput("empty return window");
  beta = std::abs(beta);
  double log_sum = 0.0, up = 0.0, down = 0.0;
  for (Rate r : returns) {
    if (!(r > -1.0) || !(std::abs(beta * r) < 1.0))
      throw DomainError("inadmissible return: need |beta R_j| < 1");
    log_sum += std::log1p(r);
    up += std::log1p(beta * r);
    down += std::log1p(-beta * r);
  }
  const double p = double(returns.size());
  const double g = std::expm1(log_sum / p);
  return {std::expm1(p * std::log1p(beta * g) - up), std::expm1(p * std::log1p(-beta * g) - down)};
}

SmcPair pure_smc_pair(Rate r1, Rate r2, double beta) {
  const Rate w[2] = {r1, r2};
  return pure_smc_window(w, beta);
}

bool long_exceeds_short(Rate long_smc, Rate short_smc) {
  return long_smc - short_smc > kStrictTolerance * (1.0 + std::abs(short_smc));
}

bool region_membership(Rate r1, Rate r2, double beta) {
  const auto s = pure_smc_pair(r1, r2, beta);
  return long_exceeds_short(s.long_smc, s.short_smc);
}

std::vector<double> symmetric_grid(double half, int steps) {
  if (steps < 1) throw InvalidInput("grid needs at least one step");
  std::vector<double> g(std::size_t(steps) + 1);
  for (int i = 0; i <= steps; ++i) g[std::size_t(i)] = half * (2.0 * i - steps) / steps;
  return g;
}

BoundaryCurve equality_boundary(double beta, int resolution, double tol) {
  BoundaryCurve curve;
  curve.beta = beta;
  const double b = std::abs(beta);
  if (!(b > 1.0)) {
    curve.status = "no boundary for |beta| <= 1: the long side's SMC never exceeds the short side's";
    return curve;
  }
  curve.box = admissible_limit(b);
  const auto grid = symmetric_grid(admissible_half_width(b), resolution);

  for (double y : grid) {
    auto f = [&](double x) { return gap(x, y, b); };
    bool have_prev = false;
    double prev_x = 0.0;
    int prev_s = 0;
    for (double x : grid) {
      if (x == y) {  // diagonal: both sides are 0, not part of the curve
        have_prev = false;
        continue;
      }
      const int s = sign_of(f(x));
      if (s == 0) {
        curve.points.push_back({x, y});
        have_prev = false;
        continue;
      }
      if (have_prev && s != prev_s) {
        if (const auto root = bisect(f, prev_x, x, tol))
          curve.points.push_back({*root, y});
        else
          ++curve.unresolved;
      }
      have_prev = true;
      prev_x = x;
      prev_s = s;
    }
  }
  // long - short is symmetric in (r1, r2); vertical grid lines mirror the horizontal ones.
  curve.unresolved *= 2;
  const std::size_t horizontal = curve.points.size();
  for (std::size_t i = 0; i < horizontal; ++i)
    if (curve.points[i].r1 != curve.points[i].r2)
      curve.points.push_back({curve.points[i].r2, curve.points[i].r1});

  std::sort(curve.points.begin(), curve.points.end(), [](const BoundaryPoint& a, const BoundaryPoint& c) {
    const double ka = a.r1 - a.r2, kc = c.r1 - c.r2;
    return ka != kc ? ka < kc : a.r1 < c.r1;
  });
  return curve;
}

std::optional<double> boundary_ray_crossing(double beta, double theta, int samples, double tol) {
  const double b = std::abs(beta);
  if (!(b > 1.0) || samples < 2) return std::nullopt;
  const double c = std::cos(theta), s = std::sin(theta);
  const double t_max = admissible_half_width(b) / std::max(std::abs(c), std::abs(s));
  auto f = [&](double t) { return gap(t * c, t * s, b); };
  double prev_t = t_max / samples;
  int prev_s = sign_of(f(prev_t));
  for (int k = 2; k <= samples; ++k) {
    const double t = t_max * k / samples;
    const int sk = sign_of(f(t));
    if (sk != 0 && prev_s != 0 && sk != prev_s) return bisect(f, prev_t, t, tol);
    if (sk != 0) {
      prev_t = t;
      prev_s = sk;
    }
  }
  return std::nullopt;
}

namespace {

void fill_row(std::vector<RegionSample>& out, const std::vector<double>& grid, std::size_t row, double b) {
  const double y = grid[row];
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i < n; ++i) out[row * n + i] = {grid[i], y, region_membership(grid[i], y, b)};
}

}  // namespace

std::vector<RegionSample> region_samples(double beta, int steps) {
  const double b = std::abs(beta);
  if (!(b > 0.0)) throw InvalidInput("beta must be non-zero");
  const auto grid = symmetric_grid(admissible_half_width(b), steps);
  std::vector<RegionSample> out(grid.size() * grid.size());
  const auto rows = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t r = 0; r < rows; ++r) fill_row(out, grid, std::size_t(r), b);
  return out;
}

std::vector<RegionSample> region_samples_reference(double beta, int steps) {
  const double b = std::abs(beta);
  if (!(b > 0.0)) throw InvalidInput("beta must be non-zero");
  const auto grid = symmetric_grid(admissible_half_width(b), steps);
  std::vector<RegionSample> out;
  out.reserve(grid.size() * grid.size());
  for (double y : grid)
    for (double x : grid) out.push_back({x, y, region_membership(x, y, b)});
  return out;
}

}  // namespace smclab
