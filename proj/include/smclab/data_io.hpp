#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "smclab/series.hpp"

namespace smclab {

enum class Side { Long, Short };

std::string_view to_string(Side s);

/// One leveraged fund: its multiple, fee and underlying index.
struct FundSpec {
  std::string ticker;
  std::string issuer;
  Side side = Side::Long;
  double beta = 0.0;
  double annual_fee = 0.0;
  std::string index_ticker;
  std::string fund_name;
  std::string index_name;
};

/// Throws InvalidInput when the sign of beta disagrees with the side or
/// |beta| is not 1, 2 or 3.
void validate(const FundSpec& spec);

using SeriesMap = std::map<std::string, ReturnSeries>;

/// Long-format `date,ticker,return` with a header row. Rows may appear in any
/// order; each ticker's series is sorted by date. Duplicate (date, ticker),
/// unparsable fields and returns <= -1 raise ParseError with the line number.
SeriesMap parse_returns(std::istream& in, const std::string& source = "<stream>");
SeriesMap load_returns(const std::filesystem::path& path);

/// Loads every `*.csv` in a directory (name order) or a single file.
/// Throws ParseError on a ticker appearing in two files.
SeriesMap load_returns_path(const std::filesystem::path& path);

/// Writes the long format with 12 significant digits, tickers in map order.
void write_returns(std::ostream& out, const SeriesMap& series);

/// `ticker,issuer,side,beta,annual_fee,index_ticker,fund_name,index_name`.
std::vector<FundSpec> parse_catalog(std::istream& in, const std::string& source = "<stream>");
std::vector<FundSpec> load_catalog(const std::filesystem::path& path);
void write_catalog(std::ostream& out, const std::vector<FundSpec>& specs);

/// The 20-fund demonstration set (10 index pairs of +3x / -3x funds, 0.95% fee).
const std::vector<FundSpec>& default_catalog();

struct AlignedPair {
  ReturnSeries letf;
  ReturnSeries index;
  FundSpec spec;
  std::size_t dropped_letf = 0;   ///< letf dates absent from the index
  std::size_t dropped_index = 0;  ///< index dates absent from the letf
};

/// Restricts both series to their common dates. Throws AlignmentError when
/// the intersection is empty.
AlignedPair align(const ReturnSeries& letf, const ReturnSeries& index, const FundSpec& spec);

// CSV helpers shared by the writers.

/// Splits one CSV record; double-quoted fields may contain commas and "" escapes.
std::vector<std::string> split_csv(std::string_view line);

/// Shortest-stable text for output files: %.12g, with inf/-inf/nan spelled out.
std::string format_number(double v);

/// Quotes a field only when it contains a comma, quote or newline.
std::string csv_field(std::string_view s);

}  // namespace smclab
