#pragma once

#include <span>
#include <utility>
#include <vector>

#include "smclab/series.hpp"

namespace smclab {

/// Trading days per year used to turn an annual fee into a daily one.
inline constexpr double kTradingDaysPerYear = 252.0;

inline double daily_fee(double annual_fee) { return annual_fee / kTradingDaysPerYear; }

/// Shortfall from maximum convexity given the two period totals:
/// max{0, (1 + r_max) / (1 + r_letf) - 1}. +infinity when r_letf == -1.
Rate smc_from_totals(Rate r_max, Rate r_letf);

struct SmcInput {
  std::span<const Rate> letf_returns;
  std::span<const Rate> index_returns;
  double beta;
};

/// SMC over one window; p is the common length of both sequences.
Rate smc(const SmcInput& in);

/// Uncensored SMC in exponential-of-sum form:
/// exp(sum log((1 + beta g_index) / (1 + R_letf,j))) - 1.
/// Requires 1 + beta g_index > 0.
double smc_log_form(const SmcInput& in);

/// 2-norm of centred log returns, i.e. sqrt(p) times the biased standard
/// deviation of log(1 + R_j).
double sn2(std::span<const Rate> returns);

/// sqrt(sum (beta R_j - beta mean(R))^2) on raw returns. Only used to check the
/// sign symmetry that log returns break.
double sn2_raw(std::span<const Rate> returns, double beta);

/// Share of sampled R with strictly signed geometric mean for which
/// SN2(beta R) <= SN2(-beta R) (mean > 0) or >= (mean < 0) fails.
struct Sn2AsymmetryReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double violation_rate() const { return checked ? double(violations) / double(checked) : 0.0; }
};
void check_sn2_asymmetry(std::span<const Rate> index_returns, double beta, Sn2AsymmetryReport& report);

/// eps_t = R_letf,t - beta R_index,t + annual_fee / 252. Dates must match.
std::vector<double> tracking_errors(const ReturnSeries& letf, const ReturnSeries& index,
                                    double beta, double annual_fee);

enum class MomentConvention {
  Population,  ///< 1/n, the default everywhere
  Sample,      ///< 1/(n-1) for the variance only
};

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double range = 0.0;
  double variance = 0.0;
  double skewness = 0.0;  ///< m3 / m2^(3/2); NaN when the sample is constant
  double kurtosis = 0.0;  ///< m4 / m2^2; NaN when the sample is constant
};

/// Central-moment summary. Throws InvalidInput on empty input; variance is NaN
/// for a single value.
SummaryStats summary_stats(std::span<const double> values,
                           MomentConvention convention = MomentConvention::Population);

/// Sample autocorrelations at lags 0..max_lag. NaN beyond lag 0 for a constant series.
std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag);

/// Partial autocorrelations from autocorrelations by Durbin-Levinson recursion.
/// Output has the same length as `acf`; element 0 is 1.
std::vector<double> partial_autocorrelation(std::span<const double> acf);

struct Diagnostics {
  std::vector<std::pair<double, double>> qq_points;  ///< (theoretical, sample)
  std::vector<double> acf;
  std::vector<double> pacf;
  double band = 0.0;  ///< 1.96 / sqrt(n)
};

/// QQ against N(0,1) using Blom plotting positions, ACF and PACF of the log
/// returns (squared when `squared`). Throws InvalidInput unless n > max_lag >= 1.
Diagnostics diagnostics(std::span<const Rate> returns, std::size_t max_lag, bool squared);

}  // namespace smclab
