#include "smclab/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smclab/error.hpp"
#include "smclab/returns.hpp"

namespace smclab {

std::string_view to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::Drag: return "drag";
    case ConvexityClass::Neutral: return "neutral";
    case ConvexityClass::Convexity: return "convexity";
  }
  return "?";
}

ConvexityClass classify(double gap, double tol) {
  if (gap < -tol) return ConvexityClass::Drag;
  if (gap > tol) return ConvexityClass::Convexity;
  return ConvexityClass::Neutral;
}

double convexity_gap(std::span<const Rate> returns, double beta) {
  const Rate daily = leveraged_daily_compound(returns, beta);
  const Rate periodic = std::max(-1.0, beta * compound_return(returns));
  return daily - periodic;
}

std::vector<double> elementary_symmetric(std::span<const Rate> returns) {
  // Multiply out prod(1 + r t) one factor at a time, highest degree first.
  std::vector<double> e(returns.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < returns.size(); ++j)
    for (std::size_t g = j + 1; g >= 1; --g) e[g] += returns[j] * e[g - 1];
  return e;
}

double convexity_gap_expansion(std::span<const Rate> returns, double beta) {
  if (returns.empty()) throw InvalidInput("empty return sequence");
  if (returns.size() > kMaxExpansionLength)
    throw CapacityError("expansion supports at most " + std::to_string(kMaxExpansionLength) +
                        " returns");
  const auto e = elementary_symmetric(returns);
  double sum = 0.0;
  double beta_pow = beta;
  for (std::size_t g = 2; g < e.size(); ++g) {
    beta_pow *= beta;
    sum += (beta_pow - beta) * e[g];
  }
  return sum;
}

Rate r_max(Rate index_total, int p, double beta) {
  if (p < 1) throw InvalidInput("p must be >= 1");
  if (!(index_total > -1.0)) throw DomainError("index total return <= -1");
  // (1 + g)^p - 1 is index_total itself; skip the round trip so SMC(R, R | 1) is exactly 0.
  if (beta == 1.0) return index_total;
  const double g = geometric_mean_return(index_total, p);
  if (!(1.0 + beta * g > 0.0)) return -1.0;
  return std::expm1(p * std::log1p(beta * g));
}

Rate limit_daily_curve(Rate index_total, double beta) {
  if (!(index_total > -1.0)) throw DomainError("index total return <= -1");
  return std::max(-1.0, std::expm1(beta * std::log1p(index_total)));
}

Rate periodic_leverage(Rate index_total, double beta) {
  if (!(index_total > -1.0)) throw DomainError("index total return <= -1");
  return std::max(-1.0, beta * index_total);
}

Horizon Horizon::days(int p) {
  if (p < 1) throw InvalidInput("window length must be >= 1");
  return Horizon(p);
}

namespace {

CurveRow curve_row(double beta, Horizon h, Rate x) {
  const Rate daily = h.is_infinite() ? limit_daily_curve(x, beta) : r_max(x, h.value(), beta);
  return {beta, h, x, daily, periodic_leverage(x, beta)};
}

void check_grid(std::span<const Rate> x_grid) {
  for (Rate x : x_grid)
    if (!(x > -1.0)) throw DomainError("curve grid value <= -1");
}

}  // namespace

std::vector<CurveRow> emit_curve_family(std::span<const double> betas,
                                        std::span<const Horizon> horizons,
                                        std::span<const Rate> x_grid) {
  check_grid(x_grid);
  const std::size_t nx = x_grid.size();
  const std::size_t nh = horizons.size();
  const std::size_t total = betas.size() * nh * nx;
  std::vector<CurveRow> rows(total, CurveRow{0.0, Horizon::infinite(), 0.0, 0.0, 0.0});
  const auto n = static_cast<std::ptrdiff_t>(total);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    rows[i] = curve_row(betas[i / (nh * nx)], horizons[(i / nx) % nh], x_grid[i % nx]);
  }
  return rows;
}

std::vector<CurveRow> emit_curve_family_reference(std::span<const double> betas,
                                                  std::span<const Horizon> horizons,
                                                  std::span<const Rate> x_grid) {
  check_grid(x_grid);
  std::vector<CurveRow> rows;
  rows.reserve(betas.size() * horizons.size() * x_grid.size());
  for (double b : betas)
    for (Horizon h : horizons)
      for (Rate x : x_grid) rows.push_back(curve_row(b, h, x));
  return rows;
}

bool intensifies(std::span<const Rate> returns, double beta, double beta_hi) {
  if (beta < 1.0 || beta_hi < beta) throw InvalidInput("need beta_hi >= beta >= 1");
  const double lo = convexity_gap(returns, beta);
  const double hi = convexity_gap(returns, beta_hi);
  const double slack = 1e-14 * (1.0 + std::abs(lo));
  switch (classify(lo)) {
    case ConvexityClass::Convexity: return hi >= lo - slack;
    case ConvexityClass::Drag: return hi <= lo + slack;
    case ConvexityClass::Neutral: return true;
  }
  return true;
}

}  // namespace smclab
