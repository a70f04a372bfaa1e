#include "smclab/vol_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "smclab/convexity.hpp"
#include "smclab/error.hpp"
#include "smclab/returns.hpp"

namespace smclab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Two-pass mean with a correction sweep; exact for constant input.
double accurate_mean(std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += v;
  double mean = sum / double(x.size());
  double resid = 0.0;
  for (double v : x) resid += v - mean;
  return mean + resid / double(x.size());
}

void check_pair(const SmcInput& in) {
  if (in.letf_returns.empty() || in.letf_returns.size() != in.index_returns.size())
    throw InvalidInput("SMC needs equal-length, non-empty LETF and index windows");
}

}  // namespace

Rate smc_from_totals(Rate r_max, Rate r_letf) {
  if (r_letf == -1.0) return std::numeric_limits<double>::infinity();
  if (!(r_letf > -1.0)) throw DomainError("LETF total return < -1");
  return std::max(0.0, (1.0 + r_max) / (1.0 + r_letf) - 1.0);
}

Rate smc(const SmcInput& in) {
  check_pair(in);
  const int p = static_cast<int>(in.index_returns.size());
  const Rate best = r_max(compound_return(in.index_returns), p, in.beta);
  return smc_from_totals(best, compound_return(in.letf_returns));
}

double smc_log_form(const SmcInput& in) {
  check_pair(in);
  const int p = static_cast<int>(in.index_returns.size());
  const double g = geometric_mean_return(compound_return(in.index_returns), p);
  if (!(1.0 + in.beta * g > 0.0)) throw DomainError("1 + beta g <= 0; log form undefined");
  const double level = std::log1p(in.beta * g);
  double sum = 0.0;
  for (Rate r : in.letf_returns) {
    if (!(r > -1.0)) throw DomainError("return <= -1");
    sum += level - std::log1p(r);
  }
  return std::expm1(sum);
}

double sn2(std::span<const Rate> returns) {
  if (returns.empty()) throw InvalidInput("empty return sequence");
  const auto x = log_returns(returns);
  const double mean = accurate_mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss);
}

double sn2_raw(std::span<const Rate> returns, double beta) {
  if (returns.empty()) throw InvalidInput("empty return sequence");
  const double mean = accurate_mean(returns);
  double ss = 0.0;
  for (Rate r : returns) {
    const double d = beta * r - beta * mean;
    ss += d * d;
  }
  return std::sqrt(ss);
}

void check_sn2_asymmetry(std::span<const Rate> index_returns, double beta, Sn2AsymmetryReport& report) {
  beta = std::abs(beta);
  std::vector<Rate> up, down;
  up.reserve(index_returns.size());
  down.reserve(index_returns.size());
  for (Rate r : index_returns) {
    if (!(std::abs(beta * r) < 1.0)) return;
    up.push_back(beta * r);
    down.push_back(-beta * r);
  }
  const double g = geometric_mean_return(compound_return(index_returns),
                                         static_cast<int>(index_returns.size()));
  if (g == 0.0) return;
  const double s_up = sn2(up);
  const double s_down = sn2(down);
  ++report.checked;
  if (g > 0.0 ? s_up > s_down : s_up < s_down) ++report.violations;
}

std::vector<double> tracking_errors(const ReturnSeries& letf, const ReturnSeries& index,
                                    double beta, double annual_fee) {
  if (!std::ranges::equal(letf.dates(), index.dates()))
    throw AlignmentError("tracking errors need identical dates for '" + letf.ticker() + "' and '" +
                         index.ticker() + "'");
  const double fee = daily_fee(annual_fee);
  std::vector<double> eps(letf.size());
  for (std::size_t t = 0; t < eps.size(); ++t)
    eps[t] = letf.returns()[t] - beta * index.returns()[t] + fee;
  return eps;
}

SummaryStats summary_stats(std::span<const double> values, MomentConvention convention) {
  if (values.empty()) throw InvalidInput("summary of an empty sample");
  SummaryStats s;
  s.count = values.size();
  const double n = double(s.count);
  s.mean = accurate_mean(values);

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  s.median = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  s.range = sorted.back() - sorted.front();

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - s.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;

  if (s.count < 2)
    s.variance = kNaN;
  else
    s.variance = convention == MomentConvention::Sample ? m2 * n / (n - 1.0) : m2;

  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.kurtosis = m4 / (m2 * m2);
  } else {
    s.skewness = kNaN;
    s.kurtosis = kNaN;
  }
  return s;
}

std::vector<double> autocorrelation(std::span<const double> x, std::size_t max_lag) {
  if (max_lag >= x.size()) throw InvalidInput("series shorter than max_lag + 1");
  const double mean = accurate_mean(x);
  double denom = 0.0;
  for (double v : x) denom += (v - mean) * (v - mean);

  std::vector<double> acf(max_lag + 1, kNaN);
  acf[0] = 1.0;
  if (!(denom > 0.0)) return acf;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = 0; t + k < x.size(); ++t) num += (x[t] - mean) * (x[t + k] - mean);
    acf[k] = num / denom;
  }
  return acf;
}

std::vector<double> partial_autocorrelation(std::span<const double> acf) {
  std::vector<double> pacf(acf.size(), kNaN);
  if (acf.empty()) return pacf;
  pacf[0] = 1.0;
  const std::size_t m = acf.size() - 1;
  std::vector<double> phi(m + 1, 0.0), prev(m + 1, 0.0);
  double v = 1.0;  // innovation variance ratio
  for (std::size_t k = 1; k <= m; ++k) {
    double num = acf[k];
    for (std::size_t j = 1; j < k; ++j) num -= prev[j] * acf[k - j];
    const double kk = num / v;
    phi[k] = kk;
    for (std::size_t j = 1; j < k; ++j) phi[j] = prev[j] - kk * prev[k - j];
    v *= 1.0 - kk * kk;
    pacf[k] = kk;
    prev = phi;
  }
  return pacf;
}

Diagnostics diagnostics(std::span<const Rate> returns, std::size_t max_lag, bool squared) {
  if (max_lag < 1 || returns.size() <= max_lag)
    throw InvalidInput("diagnostics need n > max_lag >= 1");
  auto x = log_returns(returns);
  if (squared)
    for (double& v : x) v *= v;

  Diagnostics d;
  d.acf = autocorrelation(x, max_lag);
  d.pacf = partial_autocorrelation(d.acf);
  const double n = double(x.size());
  d.band = 1.96 / std::sqrt(n);

  const double mean = accurate_mean(x);
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  std::vector<double> z(x);
  std::sort(z.begin(), z.end());
  const boost::math::normal_distribution<double> normal;
  d.qq_points.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double pos = (double(i + 1) - 0.375) / (n + 0.25);
    d.qq_points.emplace_back(boost::math::quantile(normal, pos), sd > 0.0 ? (z[i] - mean) / sd : kNaN);
  }
  return d;
}

}  // namespace smclab
