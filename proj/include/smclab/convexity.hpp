#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "smclab/series.hpp"

namespace smclab {

enum class ConvexityClass { Drag, Neutral, Convexity };

inline constexpr double kNeutralTolerance = 1e-12;

std::string_view to_string(ConvexityClass c);

/// Drag iff d < -tol, Convexity iff d > tol.
ConvexityClass classify(double gap, double tol = kNeutralTolerance);

/// Leveraged daily-compounded return minus the leveraged period return:
///
///   D(R|beta) = [prod(1 + beta R_j) - 1] - [beta (prod(1 + R_j) - 1)]
///
/// Each leveraged factor is floored at 0 and the period term at -1, so neither
/// side can lose more than 100%.
double convexity_gap(std::span<const Rate> returns, double beta);

/// Largest p accepted by convexity_gap_expansion.
inline constexpr std::size_t kMaxExpansionLength = 20;

/// Coefficients e_0..e_p of prod(1 + R_j t). O(p^2).
std::vector<double> elementary_symmetric(std::span<const Rate> returns);

/// sum_{g=2}^{p} (beta^g - beta) e_g(R). Agrees with convexity_gap whenever no
/// censoring applies. Throws CapacityError for p > kMaxExpansionLength.
double convexity_gap_expansion(std::span<const Rate> returns, double beta);

/// Maximum leveraged daily-compounded return over all p-day paths that compound
/// to `index_total`: (1 + beta g)^p - 1 with g the geometric mean return.
/// -1 when 1 + beta g <= 0.
Rate r_max(Rate index_total, int p, double beta);

/// p -> infinity limit of r_max: (1 + x)^beta - 1, floored at -1.
Rate limit_daily_curve(Rate index_total, double beta);

/// Leveraging the period return once: max(-1, beta x).
Rate periodic_leverage(Rate index_total, double beta);

/// Window length for a curve family; `infinite()` selects limit_daily_curve.
class Horizon {
 public:
  static Horizon days(int p);
  static Horizon infinite() { return Horizon(); }

  bool is_infinite() const { return !days_.has_value(); }
  int value() const { return *days_; }
  /// File encoding: -1 for infinity.
  int encoded() const { return days_.value_or(-1); }

  friend bool operator==(const Horizon&, const Horizon&) = default;

 private:
  Horizon() = default;
  explicit Horizon(int p) : days_(p) {}
  std::optional<int> days_;
};

struct CurveRow {
  double beta;
  Horizon p;
  Rate x;
  Rate y_daily;
  Rate y_periodic;
};

/// One row per (beta, p, x), ordered by the argument order of each list.
/// OpenMP-parallel over the flattened grid.
std::vector<CurveRow> emit_curve_family(std::span<const double> betas,
                                        std::span<const Horizon> horizons,
                                        std::span<const Rate> x_grid);

/// Serial reference for emit_curve_family.
std::vector<CurveRow> emit_curve_family_reference(std::span<const double> betas,
                                                  std::span<const Horizon> horizons,
                                                  std::span<const Rate> x_grid);

/// Does raising the leverage from `beta` to `beta_hi` (>= beta >= 1) intensify
/// the regime of R: D grows when D > 0, shrinks when D < 0? Neutral gaps count
/// as consistent.
bool intensifies(std::span<const Rate> returns, double beta, double beta_hi);

}  // namespace smclab
