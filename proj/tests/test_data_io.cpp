#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "smclab/data_io.hpp"
#include "smclab/error.hpp"
#include "smclab/simulate.hpp"

using namespace smclab;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("smclab_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_returns(in);
  } catch (const ParseError& e) {
    return int(e.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("Date parsing") {
  const auto d = Date::parse("2009-01-02");
  REQUIRE(d);
  CHECK(d->iso() == "2009-01-02");
  CHECK_FALSE(Date::parse("2009-02-30"));
  CHECK_FALSE(Date::parse("2009/01/02"));
  CHECK_FALSE(Date::parse("20090102"));
  CHECK(*Date::parse("2009-01-02") < *Date::parse("2009-01-05"));
}

TEST_CASE("ReturnSeries invariants") {
  const auto d = weekday_calendar(Date::from_ymd(2021, 1, 1), 3);
  CHECK(d[0] == Date::from_ymd(2021, 1, 1));
  CHECK(d[1] == Date::from_ymd(2021, 1, 4));
  CHECK_THROWS_AS(ReturnSeries("X", {}, {}), InvalidInput);
  CHECK_THROWS_AS(ReturnSeries("X", d, {0.1, 0.2}), InvalidInput);
  CHECK_THROWS_AS(ReturnSeries("X", {d[1], d[0]}, {0.1, 0.2}), InvalidInput);
  CHECK_THROWS_AS(ReturnSeries("X", d, {0.1, -1.0, 0.2}), DomainError);
  const ReturnSeries s("X", d, {0.1, 0.2, 0.3});
  CHECK(s.slice(1, 3).size() == 2);
  CHECK(s.slice(1, 3).returns()[0] == 0.2);
}

TEST_CASE("parse_returns") {
  std::istringstream in("date,ticker,return\n2009-01-05,SPXL,-0.02\n2009-01-02,SPXL,0.01\n2009-01-02,SPX,0.003\n");
  const auto m = parse_returns(in);
  REQUIRE(m.size() == 2);
  const auto& s = m.at("SPXL");
  CHECK(s.size() == 2);
  CHECK(s.returns()[0] == 0.01);
  CHECK(s.dates()[1] == Date::from_ymd(2009, 1, 5));
}

TEST_CASE("parse_returns rejects bad rows with line numbers") {
  CHECK(parse_error_line("date,ticker,return\n2009-01-02,SPXL,0.01\n2009-01-02,SPXL,0.02\n") == 3);
  CHECK(parse_error_line("date,ticker,return\n2009-01-02,SPXL,-1.5\n") == 2);
  CHECK(parse_error_line("date,ticker,return\n2009-01-02,SPXL,-1\n") == 2);
  CHECK(parse_error_line("date,ticker,return\n2009-01-02,SPXL,abc\n") == 2);
  CHECK(parse_error_line("date,ticker,return\n2009-13-02,SPXL,0.1\n") == 2);
  CHECK(parse_error_line("date,ticker,return\n2009-01-02,SPXL\n") == 2);
  CHECK(parse_error_line("when,what,how\n") == 1);
  std::istringstream in("date,ticker,return\n2009-01-02,SPXL,-1.5\n");
  try {
    parse_returns(in, "r.csv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("r.csv:2") != std::string::npos);
    CHECK(std::string(e.what()).find("-1") != std::string::npos);
  }
}

TEST_CASE("load -> write -> load round trip at 12 significant digits") {
  SeriesMap m;
  for (std::uint64_t s = 0; s < 3; ++s) {
    auto idx = gen_index({IndexKind::IidStudentT, 0.0, 0.02, 3.0, s}, 300, "T" + std::to_string(s));
    m.emplace(idx.ticker(), idx);
  }
  std::ostringstream first;
  write_returns(first, m);
  std::istringstream in(first.str());
  const auto back = parse_returns(in);
  REQUIRE(back.size() == m.size());
  for (const auto& [t, s] : m) {
    const auto& b = back.at(t);
    CHECK(b.dates().size() == s.dates().size());
    for (std::size_t i = 0; i < s.size(); ++i)
      CHECK(std::abs(b.returns()[i] - s.returns()[i]) <= 5e-12 * std::abs(s.returns()[i]) + 1e-300);
  }
  std::ostringstream second;
  write_returns(second, back);
  CHECK(second.str() == first.str());
}

TEST_CASE("directory loading") {
  const auto dir = temp_dir("dir");
  std::ofstream(dir / "a.csv") << "date,ticker,return\n2009-01-02,A,0.01\n";
  std::ofstream(dir / "b.csv") << "date,ticker,return\n2009-01-02,B,0.02\n";
  std::ofstream(dir / "notes.txt") << "ignored";
  auto m = load_returns_path(dir);
  CHECK(m.size() == 2);
  CHECK(load_returns_path(dir / "a.csv").size() == 1);
  std::ofstream(dir / "c.csv") << "date,ticker,return\n2009-01-05,A,0.01\n";
  CHECK_THROWS_AS(load_returns_path(dir), ParseError);
  CHECK_THROWS(load_returns_path(dir / "missing.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("catalog") {
  const auto& cat = default_catalog();
  REQUIRE(cat.size() == 20);
  const auto spxl = std::find_if(cat.begin(), cat.end(), [](const auto& f) { return f.ticker == "SPXL"; });
  const auto spxs = std::find_if(cat.begin(), cat.end(), [](const auto& f) { return f.ticker == "SPXS"; });
  REQUIRE(spxl != cat.end());
  REQUIRE(spxs != cat.end());
  CHECK(spxl->beta == 3.0);
  CHECK(spxl->index_ticker == "SPX");
  CHECK(spxs->beta == -3.0);
  CHECK(spxs->side == Side::Short);
  for (const auto& f : cat) {
    CHECK_NOTHROW(validate(f));
    CHECK(f.annual_fee == 0.0095);
  }

  std::ostringstream out;
  write_catalog(out, cat);
  std::istringstream in(out.str());
  const auto back = parse_catalog(in);
  REQUIRE(back.size() == cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(back[i].ticker == cat[i].ticker);
    CHECK(back[i].fund_name == cat[i].fund_name);
    CHECK(back[i].beta == cat[i].beta);
  }

  const std::filesystem::path shipped = SMCLAB_SOURCE_DIR "/data/catalog.csv";
  const auto file = load_catalog(shipped);
  REQUIRE(file.size() == cat.size());
  for (std::size_t i = 0; i < cat.size(); ++i) {
    CHECK(file[i].ticker == cat[i].ticker);
    CHECK(file[i].issuer == cat[i].issuer);
    CHECK(file[i].side == cat[i].side);
    CHECK(file[i].beta == cat[i].beta);
    CHECK(file[i].annual_fee == cat[i].annual_fee);
    CHECK(file[i].index_ticker == cat[i].index_ticker);
    CHECK(file[i].fund_name == cat[i].fund_name);
    CHECK(file[i].index_name == cat[i].index_name);
  }
}

TEST_CASE("catalog validation") {
  std::istringstream bad(
      "ticker,issuer,side,beta,annual_fee,index_ticker,fund_name,index_name\n"
      "XX,Test,long,-3,0.0095,SPX,Bad,Index\n");
  CHECK_THROWS(parse_catalog(bad));
  CHECK_THROWS_AS(validate(FundSpec{"X", "", Side::Long, 4.0, 0.0, "I", "", ""}), InvalidInput);
  CHECK_THROWS_AS(validate(FundSpec{"X", "", Side::Short, 2.0, 0.0, "I", "", ""}), InvalidInput);
}

TEST_CASE("align") {
  const auto d = weekday_calendar(Date::from_ymd(2020, 1, 6), 5);
  const ReturnSeries idx("I", d, {0.01, 0.02, 0.03, 0.04, 0.05});
  const FundSpec spec{"L", "", Side::Long, 3.0, 0.0, "I", "", ""};

  auto a = align(ReturnSeries("L", d, {0.1, 0.2, 0.3, 0.4, 0.5}), idx, spec);
  CHECK(a.letf.size() == 5);
  CHECK(a.dropped_letf == 0);
  CHECK(a.dropped_index == 0);

  a = align(ReturnSeries("L", {d[0], d[1], d[3], d[4]}, {0.1, 0.2, 0.4, 0.5}), idx, spec);
  CHECK(a.letf.size() == 4);
  CHECK(a.index.size() == 4);
  CHECK(a.dropped_index == 1);
  CHECK(a.index.returns()[2] == 0.04);

  const auto again = align(a.letf, a.index, spec);
  CHECK(again.letf == a.letf);
  CHECK(again.index == a.index);
  CHECK(again.dropped_letf == 0);
  CHECK(again.dropped_index == 0);

  const ReturnSeries other("L", weekday_calendar(Date::from_ymd(2021, 1, 4), 2), {0.1, 0.2});
  CHECK_THROWS_AS(align(other, idx, spec), AlignmentError);
}

TEST_CASE("csv helpers") {
  CHECK(split_csv("a,\"b,c\",d") == std::vector<std::string>{"a", "b,c", "d"});
  CHECK(split_csv("\"say \"\"hi\"\"\",x") == std::vector<std::string>{"say \"hi\"", "x"});
  CHECK(split_csv("a,,b") == std::vector<std::string>{"a", "", "b"});
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}
