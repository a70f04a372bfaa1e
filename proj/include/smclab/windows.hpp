#pragma once

#include <map>
#include <string>
#include <vector>

#include "smclab/convexity.hpp"
#include "smclab/data_io.hpp"
#include "smclab/region.hpp"
#include "smclab/series.hpp"
#include "smclab/vol_stats.hpp"

namespace smclab {

/// Half-open index range [first, last) into a series.
struct WindowSpan {
  std::size_t first;
  std::size_t last;
};

struct RollPlan {
  std::vector<WindowSpan> windows;
  bool too_short = false;  ///< n < p, so there are no windows
};

/// floor((n - p) / step) + 1 windows of length p, ordered by end position.
/// Throws InvalidInput for p < 1 or step < 1.
RollPlan roll(std::size_t n, std::size_t p, std::size_t step = 1);

struct WindowRecord {
  std::string ticker;
  std::string index_ticker;
  Date end_date;
  int p = 0;
  double beta = 0.0;
  Rate r_index = 0.0;
  Rate r_letf = 0.0;
  Rate r_max = 0.0;
  Rate smc = 0.0;
  double sn2 = 0.0;
  ConvexityClass cls = ConvexityClass::Neutral;

  friend bool operator==(const WindowRecord&, const WindowRecord&) = default;
};

struct WindowOptions {
  std::size_t step = 1;
  double neutral_tol = kNeutralTolerance;
};

struct EvaluationResult {
  std::vector<WindowRecord> records;
  std::vector<std::string> warnings;  ///< skipped windows and short series
};

/// One record per window, in end-date order. OpenMP-parallel over windows;
/// a window that fails is skipped and reported in `warnings`.
EvaluationResult evaluate_windows(const AlignedPair& pair, int p, double beta,
                                  const WindowOptions& opt = {});
EvaluationResult evaluate_windows(const AlignedPair& pair, int p, const WindowOptions& opt = {});

/// Serial reference: composes compound_return, r_max, smc_from_totals, sn2 and
/// convexity_gap on each window slice.
EvaluationResult evaluate_windows_reference(const AlignedPair& pair, int p, double beta,
                                            const WindowOptions& opt = {});

struct TickerSummary {
  std::string ticker;
  std::string index_ticker;
  int p = 0;
  SummaryStats smc;
  SummaryStats sn2;
  // Which statistic is larger for each measure (skewness compared in absolute value).
  bool smc_range_larger = false;
  bool smc_variance_larger = false;
  bool smc_skew_larger = false;
  bool smc_kurtosis_larger = false;
};

struct SummaryResult {
  std::vector<TickerSummary> summaries;  ///< ordered by (ticker, p)
  std::vector<std::string> warnings;
};

/// Groups by (ticker, p); groups with fewer than 3 records are omitted with a warning.
SummaryResult summarize_by_ticker(const std::vector<WindowRecord>& records);

struct TickerMeans {
  std::string ticker;
  double mean_sn2;
  double mean_smc;
};

struct RankingRow {
  int rank = 0;
  std::string ticker_by_sn2;
  std::string ticker_by_smc;
  double mean_sn2 = 0.0;
  double mean_smc = 0.0;
  bool disagreement = false;
  bool tie = false;  ///< a tie in either ordering was broken by ticker name
};

/// Rank 1 = greatest mean. Throws InvalidInput for fewer than 2 tickers.
std::vector<RankingRow> rank_by_mean(const std::vector<TickerMeans>& means);

struct Counterexample {
  std::string index_ticker;
  Date end_date;
  double beta = 0.0;
  int p = 0;
  Rate long_smc = 0.0;
  Rate short_smc = 0.0;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct CounterexampleScan {
  std::vector<Counterexample> instances;  ///< ordered by (index, beta, end date)
  std::size_t scanned = 0;
  std::size_t skipped = 0;  ///< windows with some |beta R_j| >= 1
};

/// Synthetic +beta / -beta funds with no fees or errors on each index window;
/// reports every window where the long side's SMC strictly exceeds the
/// short side's (beyond kStrictTolerance). Betas are magnitudes. OpenMP-parallel over windows.
CounterexampleScan counterexample_search(const std::vector<ReturnSeries>& indexes,
                                         const std::vector<double>& betas, int p,
                                         std::size_t step = 1);

/// Serial reference built on smc() over explicitly formed +/-beta series.
CounterexampleScan counterexample_search_reference(const std::vector<ReturnSeries>& indexes,
                                                   const std::vector<double>& betas, int p,
                                                   std::size_t step = 1);

}  // namespace smclab
