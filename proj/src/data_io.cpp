#include "smclab/data_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "smclab/error.hpp"

namespace smclab {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

void expect_header(const std::vector<std::string>& got, const std::vector<std::string>& want,
                   const std::string& source) {
  std::vector<std::string> norm;
  for (const auto& f : got) norm.push_back(lower(trim(f)));
  if (norm != want) {
    std::string w;
    for (const auto& f : want) w += (w.empty() ? "" : ",") + f;
    throw ParseError(source, 1, "expected header '" + w + "'");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

std::string_view to_string(Side s) { return s == Side::Long ? "Long" : "Short"; }

void validate(const FundSpec& spec) {
  if (spec.ticker.empty()) throw InvalidInput("fund with empty ticker");
  if (spec.side == Side::Long && !(spec.beta > 0.0))
    throw InvalidInput("fund '" + spec.ticker + "': side Long needs beta > 0");
  if (spec.side == Side::Short && !(spec.beta < 0.0))
    throw InvalidInput("fund '" + spec.ticker + "': side Short needs beta < 0");
  const double mag = std::abs(spec.beta);
  if (mag != 1.0 && mag != 2.0 && mag != 3.0)
    throw InvalidInput("fund '" + spec.ticker + "': |beta| must be 1, 2 or 3");
  if (!(spec.annual_fee >= 0.0)) throw InvalidInput("fund '" + spec.ticker + "': negative fee");
  if (spec.index_ticker.empty()) throw InvalidInput("fund '" + spec.ticker + "': missing index");
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

SeriesMap parse_returns(std::istream& in, const std::string& source) {
  struct Row {
    Date date;
    double value;
    std::size_t line;
  };
  std::map<std::string, std::vector<Row>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split_csv(line);
    if (!header) {
      expect_header(f, {"date", "ticker", "return"}, source);
      header = true;
      continue;
    }
    if (f.size() != 3) throw ParseError(source, lineno, "expected 3 fields");
    auto date = Date::parse(trim(f[0]));
    if (!date) throw ParseError(source, lineno, "bad date '" + f[0] + "'");
    const std::string ticker(trim(f[1]));
    if (ticker.empty()) throw ParseError(source, lineno, "empty ticker");
    double value = 0.0;
    if (!parse_double(f[2], value)) throw ParseError(source, lineno, "bad return '" + f[2] + "'");
    if (value <= -1.0) throw ParseError(source, lineno, "return <= -1");
    rows[ticker].push_back({*date, value, lineno});
  }
  if (!header) throw ParseError(source, 0, "missing header");

  SeriesMap out;
  for (auto& [ticker, rs] : rows) {
    std::stable_sort(rs.begin(), rs.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    std::vector<Date> dates;
    std::vector<Rate> values;
    for (std::size_t i = 0; i < rs.size(); ++i) {
      if (i > 0 && rs[i].date == rs[i - 1].date)
        throw ParseError(source, rs[i].line,
                         "duplicate row for " + ticker + " on " + rs[i].date.iso() +
                             " (first at line " + std::to_string(rs[i - 1].line) + ")");
      dates.push_back(rs[i].date);
      values.push_back(rs[i].value);
    }
    out.emplace(ticker, ReturnSeries(ticker, std::move(dates), std::move(values)));
  }
  return out;
}

SeriesMap load_returns(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_returns(in, path.string());
}

SeriesMap load_returns_path(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return load_returns(path);
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  SeriesMap out;
  for (const auto& f : files) {
    for (auto& [ticker, s] : load_returns(f)) {
      if (out.contains(ticker))
        throw ParseError(f.string(), 0, "ticker '" + ticker + "' already loaded from another file");
      out.emplace(ticker, std::move(s));
    }
  }
  return out;
}

void write_returns(std::ostream& out, const SeriesMap& series) {
  out << "date,ticker,return\n";
  for (const auto& [ticker, s] : series)
    for (std::size_t i = 0; i < s.size(); ++i)
      out << s.dates()[i].iso() << ',' << csv_field(ticker) << ',' << format_number(s.returns()[i])
          << '\n';
}

std::vector<FundSpec> parse_catalog(std::istream& in, const std::string& source) {
  std::vector<FundSpec> specs;
  std::set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    auto f = split_csv(line);
    if (!header) {
      expect_header(f,
                    {"ticker", "issuer", "side", "beta", "annual_fee", "index_ticker", "fund_name",
                     "index_name"},
                    source);
      header = true;
      continue;
    }
    if (f.size() != 8) throw ParseError(source, lineno, "expected 8 fields");
    FundSpec s;
    s.ticker = std::string(trim(f[0]));
    s.issuer = std::string(trim(f[1]));
    const auto side = lower(trim(f[2]));
    if (side == "long")
      s.side = Side::Long;
    else if (side == "short")
      s.side = Side::Short;
    else
      throw ParseError(source, lineno, "unknown side '" + f[2] + "'");
    if (!parse_double(f[3], s.beta)) throw ParseError(source, lineno, "bad beta '" + f[3] + "'");
    if (!parse_double(f[4], s.annual_fee)) throw ParseError(source, lineno, "bad fee '" + f[4] + "'");
    s.index_ticker = std::string(trim(f[5]));
    s.fund_name = std::string(trim(f[6]));
    s.index_name = std::string(trim(f[7]));
    try {
      validate(s);
    } catch (const InvalidInput& e) {
      throw ParseError(source, lineno, e.what());
    }
    if (!seen.insert(s.ticker).second) throw ParseError(source, lineno, "duplicate ticker " + s.ticker);
    specs.push_back(std::move(s));
  }
  if (!header) throw ParseError(source, 0, "missing header");
  return specs;
}

std::vector<FundSpec> load_catalog(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_catalog(in, path.string());
}

void write_catalog(std::ostream& out, const std::vector<FundSpec>& specs) {
  out << "ticker,issuer,side,beta,annual_fee,index_ticker,fund_name,index_name\n";
  for (const auto& s : specs)
    out << csv_field(s.ticker) << ',' << csv_field(s.issuer) << ',' << to_string(s.side) << ','
        << format_number(s.beta) << ',' << format_number(s.annual_fee) << ','
        << csv_field(s.index_ticker) << ',' << csv_field(s.fund_name) << ','
        << csv_field(s.index_name) << '\n';
}

const std::vector<FundSpec>& default_catalog() {
  static const std::vector<FundSpec> catalog = [] {
    constexpr double fee = 0.0095;
    auto pair = [](std::vector<FundSpec>& v, const char* issuer, const char* lt, const char* ln,
                   const char* st, const char* sn, const char* idx, const char* iname_long,
                   const char* iname_short) {
      v.push_back({lt, issuer, Side::Long, 3.0, fee, idx, ln, iname_long});
      v.push_back({st, issuer, Side::Short, -3.0, fee, idx, sn, iname_short});
    };
    std::vector<FundSpec> v;
    pair(v, "ProShares", "FINU", "UltraPro Financials", "FINZ", "UltraPro Short Financials",
         "DJUSFN", "Dow Jones U.S. Financials Index", "Dow Jones U.S. Financials Index");
    pair(v, "Direxion", "NUGT", "Daily Gold Miners Bull 3x Shares", "DUST",
         "Daily Gold Miners Bear 3x Shares", "GDM", "NYSE Arca Gold Miners Index",
         "NYSE Arca Gold Miners Index");
    pair(v, "ProShares", "UDOW", "UltraPro Dow30", "SDOW", "UltraPro Short Dow30", "INDU",
         "Dow Jones Industrial Average Index", "Dow Jones Industrial Average");
    pair(v, "Direxion", "TECL", "Daily Technology Bull 3x Shares", "TECS",
         "Daily Technology Bear 3x Shares", "IXT", "S&P Technology Select Sector Index",
         "S&P Technology Select Sector Index");
    pair(v, "Direxion", "RUSL", "Daily Russia Bull 3x Shares", "RUSS", "Daily Russia Bear 3x Shares",
         "MVRSX", "Market Vectors Russia Index", "Market Vectors Russia Index");
    pair(v, "Direxion", "DZK", "Daily Developed Markets Bull 3x Shares", "DPK",
         "Daily Developed Markets Bear 3x Shares", "MXEA", "MSCI EAFE Index", "MSCI EAFE Index");
    pair(v, "Direxion", "EDC", "Daily Emerging Markets Bull 3x Shares", "EDZ",
         "Daily Emerging Markets Bear 3x Shares", "MXEF", "MSCI Emerging Markets Index",
         "MSCI Emerging Markets Index");
    pair(v, "ProShares", "TQQQ", "UltraPro QQQ", "SQQQ", "UltraPro Short QQQ", "NDX",
         "NASDAQ-100 Index", "NASDAQ-100 Index");
    pair(v, "Direxion", "TNA", "Daily Small Cap Bull 3x Shares", "TZA",
         "Daily Small Cap Bear 3x Shares", "RTY", "Russell 2000 Index", "Russell 2000 Index");
    pair(v, "Direxion", "SPXL", "Daily S&P 500 Bull 3x Shares", "SPXS",
         "Daily S&P 500 Bear 3x Shares", "SPX", "S&P 500 Index", "S&P 500 Index");
    return v;
  }();
  return catalog;
}

AlignedPair align(const ReturnSeries& letf, const ReturnSeries& index, const FundSpec& spec) {
  std::vector<Date> dates;
  std::vector<Rate> lr, ir;
  const auto ld = letf.dates();
  const auto id = index.dates();
  std::size_t i = 0, j = 0;
  while (i < ld.size() && j < id.size()) {
    if (ld[i] < id[j]) {
      ++i;
    } else if (id[j] < ld[i]) {
      ++j;
    } else {
      dates.push_back(ld[i]);
      lr.push_back(letf.returns()[i]);
      ir.push_back(index.returns()[j]);
      ++i;
      ++j;
    }
  }
  if (dates.empty())
    throw AlignmentError("no common dates between '" + letf.ticker() + "' and '" + index.ticker() + "'");
  const std::size_t kept = dates.size();
  AlignedPair out{ReturnSeries(letf.ticker(), dates, std::move(lr)),
                  ReturnSeries(index.ticker(), std::move(dates), std::move(ir)), spec, 0, 0};
  out.dropped_letf = letf.size() - kept;
  out.dropped_index = index.size() - kept;
  return out;
}

}  // namespace smclab
