#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "smclab/convexity.hpp"
#include "smclab/data_io.hpp"
#include "smclab/region.hpp"
#include "smclab/vol_stats.hpp"
#include "smclab/windows.hpp"

// Plot-ready output files: UTF-8, comma separated, header row, LF endings.
// Numbers use format_number (%.12g).

namespace smclab {

/// beta,p,x,y_daily,y_periodic (p = -1 is the infinite-horizon curve)
void write_curves_csv(std::ostream& out, std::span<const CurveRow> rows);

/// ticker,index,end_date,p,beta,r_index,r_letf,r_max,smc,sn2,class
void write_windows_csv(std::ostream& out, std::span<const WindowRecord> records);

/// One JSON object per line with the same fields as the CSV; infinite SMC is the string "inf".
void write_windows_jsonl(std::ostream& out, std::span<const WindowRecord> records);

void write_summaries_csv(std::ostream& out, std::span<const TickerSummary> summaries);

struct RankingTable {
  Side side;
  int p;
  std::vector<RankingRow> rows;
};

/// side,p,rank,ticker_by_sn2,ticker_by_smc,mean_sn2,mean_smc,disagreement,tie
void write_rankings_csv(std::ostream& out, std::span<const RankingTable> tables);

/// beta,r1,r2
void write_boundary_csv(std::ostream& out, std::span<const BoundaryCurve> curves);

/// beta,r1,r2,member
void write_region_samples_csv(std::ostream& out, double beta, std::span<const RegionSample> samples,
                              bool header = true);

/// lag,acf,pacf,band
void write_acf_csv(std::ostream& out, const Diagnostics& d);

/// theoretical_q,sample_q
void write_qq_csv(std::ostream& out, const Diagnostics& d);

/// index,end_date,beta,p,long_smc,short_smc
void write_counterexamples_csv(std::ostream& out, std::span<const Counterexample> rows);

}  // namespace smclab
