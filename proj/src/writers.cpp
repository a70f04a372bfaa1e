#include "smclab/writers.hpp"

#include <ostream>

#include <cmath>

#include "json.hpp"

namespace smclab {

namespace {

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

void write_curves_csv(std::ostream& out, std::span<const CurveRow> rows) {
  out << "beta,p,x,y_daily,y_periodic\n";
  for (const auto& r : rows)
    out << format_number(r.beta) << ',' << r.p.encoded() << ',' << format_number(r.x) << ','
        << format_number(r.y_daily) << ',' << format_number(r.y_periodic) << '\n';
}

void write_windows_csv(std::ostream& out, std::span<const WindowRecord> records) {
  out << "ticker,index,end_date,p,beta,r_index,r_letf,r_max,smc,sn2,class\n";
  for (const auto& r : records)
    out << csv_field(r.ticker) << ',' << csv_field(r.index_ticker) << ',' << r.end_date.iso() << ','
        << r.p << ',' << format_number(r.beta) << ',' << format_number(r.r_index) << ','
        << format_number(r.r_letf) << ',' << format_number(r.r_max) << ',' << format_number(r.smc)
        << ',' << format_number(r.sn2) << ',' << to_string(r.cls) << '\n';
}

void write_windows_jsonl(std::ostream& out, std::span<const WindowRecord> records) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["ticker"] = r.ticker;
    j["index"] = r.index_ticker;
    j["end_date"] = r.end_date.iso();
    j["p"] = r.p;
    j["beta"] = r.beta;
    j["r_index"] = r.r_index;
    j["r_letf"] = r.r_letf;
    j["r_max"] = r.r_max;
    if (std::isinf(r.smc))
      j["smc"] = "inf";
    else
      j["smc"] = r.smc;
    j["sn2"] = r.sn2;
    j["class"] = std::string(to_string(r.cls));
    out << j.dump() << '\n';
  }
}

void write_summaries_csv(std::ostream& out, std::span<const TickerSummary> summaries) {
  out << "ticker,index,p,obs,"
         "mean_sn2,median_sn2,range_sn2,var_sn2,skew_sn2,kurt_sn2,"
         "mean_smc,median_smc,range_smc,var_smc,skew_smc,kurt_smc,"
         "smc_range_larger,smc_var_larger,smc_skew_larger,smc_kurt_larger\n";
  auto stats = [&](const SummaryStats& s) {
    out << format_number(s.mean) << ',' << format_number(s.median) << ',' << format_number(s.range)
        << ',' << format_number(s.variance) << ',' << format_number(s.skewness) << ','
        << format_number(s.kurtosis);
  };
  for (const auto& s : summaries) {
    out << csv_field(s.ticker) << ',' << csv_field(s.index_ticker) << ',' << s.p << ',' << s.smc.count
        << ',';
    stats(s.sn2);
    out << ',';
    stats(s.smc);
    out << ',' << flag(s.smc_range_larger) << ',' << flag(s.smc_variance_larger) << ','
        << flag(s.smc_skew_larger) << ',' << flag(s.smc_kurtosis_larger) << '\n';
  }
}

void write_rankings_csv(std::ostream& out, std::span<const RankingTable> tables) {
  out << "side,p,rank,ticker_by_sn2,ticker_by_smc,mean_sn2,mean_smc,disagreement,tie\n";
  for (const auto& t : tables)
    for (const auto& r : t.rows)
      out << to_string(t.side) << ',' << t.p << ',' << r.rank << ',' << csv_field(r.ticker_by_sn2)
          << ',' << csv_field(r.ticker_by_smc) << ',' << format_number(r.mean_sn2) << ','
          << format_number(r.mean_smc) << ',' << flag(r.disagreement) << ',' << flag(r.tie) << '\n';
}

void write_boundary_csv(std::ostream& out, std::span<const BoundaryCurve> curves) {
  out << "beta,r1,r2\n";
  for (const auto& c : curves)
    for (const auto& pt : c.points)
      out << format_number(c.beta) << ',' << format_number(pt.r1) << ',' << format_number(pt.r2) << '\n';
}

void write_region_samples_csv(std::ostream& out, double beta, std::span<const RegionSample> samples,
                              bool header) {
  if (header) out << "beta,r1,r2,member\n";
  for (const auto& s : samples)
    out << format_number(beta) << ',' << format_number(s.r1) << ',' << format_number(s.r2) << ','
        << flag(s.member) << '\n';
}

void write_acf_csv(std::ostream& out, const Diagnostics& d) {
  out << "lag,acf,pacf,band\n";
  for (std::size_t k = 0; k < d.acf.size(); ++k)
    out << k << ',' << format_number(d.acf[k]) << ',' << format_number(d.pacf[k]) << ','
        << format_number(d.band) << '\n';
}

void write_qq_csv(std::ostream& out, const Diagnostics& d) {
  out << "theoretical_q,sample_q\n";
  for (const auto& [t, s] : d.qq_points) out << format_number(t) << ',' << format_number(s) << '\n';
}

void write_counterexamples_csv(std::ostream& out, std::span<const Counterexample> rows) {
  out << "index,end_date,beta,p,long_smc,short_smc\n";
  for (const auto& c : rows)
    out << csv_field(c.index_ticker) << ',' << c.end_date.iso() << ',' << format_number(c.beta) << ','
        << c.p << ',' << format_number(c.long_smc) << ',' << format_number(c.short_smc) << '\n';
}

}  // namespace smclab
