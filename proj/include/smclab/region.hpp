#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smclab/series.hpp"

namespace smclab {

struct SmcPair {
  Rate long_smc;
  Rate short_smc;
};

/// Uncensored SMC of synthetic +beta and -beta funds (no fees, no errors) over
/// one index window: (1 +/- beta g)^p / prod(1 +/- beta R_j) - 1. `beta` is a
/// magnitude. Throws DomainError unless every |beta R_j| < 1.
SmcPair pure_smc_window(std::span<const Rate> returns, double beta);
SmcPair pure_smc_pair(Rate r1, Rate r2, double beta);

/// Margin below which long - short counts as equality: long exceeds short only
/// when long - short > kStrictTolerance * (1 + |short|). Constant windows give
/// +/-1 ulp on both sides rather than exact zeros.
inline constexpr double kStrictTolerance = 1e-12;

bool long_exceeds_short(Rate long_smc, Rate short_smc);

/// long > short strictly.
bool region_membership(Rate r1, Rate r2, double beta);

struct BoundaryPoint {
  Rate r1;
  Rate r2;
};

struct BoundaryCurve {
  double beta = 0.0;
  std::vector<BoundaryPoint> points;  ///< ordered along the curve (by r1 - r2)
  double box = 0.0;                   ///< admissible limit 1/beta; every point has |r| < box
  std::size_t unresolved = 0;         ///< sign changes where bisection could not reach tol
  std::string status;                 ///< non-empty when no curve exists
};

inline constexpr double kBisectionTolerance = 1e-10;
inline constexpr double kBoxMargin = 1e-6;

/// Traces the 2-day equality curve long = short: on each of `resolution` + 1
/// horizontal and vertical grid lines over the admissible box, sign changes of
/// long - short are bisected until |long - short| <= tol. Grid lines stop
/// kBoxMargin short of the limit. The diagonal, where both sides are 0, is
/// excluded. Crossings too close to the singular edge to meet tol are counted in
/// `unresolved` instead of emitted. |beta| <= 1 yields an empty curve and status.
BoundaryCurve equality_boundary(double beta, int resolution = 400, double tol = kBisectionTolerance);

/// Distance from the origin along direction angle `theta` (radians) to the
/// first sign change of long - short inside the admissible box, bisected to
/// `tol`; nullopt when the ray never crosses the boundary or the crossing
/// cannot be resolved to `tol`.
std::optional<double> boundary_ray_crossing(double beta, double theta, int samples = 2000,
                                            double tol = kBisectionTolerance);

struct RegionSample {
  Rate r1;
  Rate r2;
  bool member;
};

/// Membership on a (steps + 1)^2 grid over the admissible box, row-major with
/// r2 outer. OpenMP-parallel over rows.
std::vector<RegionSample> region_samples(double beta, int steps);
std::vector<RegionSample> region_samples_reference(double beta, int steps);

/// Evenly spaced values from -half to +half inclusive (steps + 1 of them); the
/// middle one is exactly 0 when steps is even.
std::vector<double> symmetric_grid(double half, int steps);

}  // namespace smclab
