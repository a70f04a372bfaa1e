#include "smclab/series.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "smclab/error.hpp"

namespace smclab {

namespace {

bool parse_digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<Date> Date::parse(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_digits(text.substr(0, 4), y) || !parse_digits(text.substr(5, 2), m) ||
      !parse_digits(text.substr(8, 2), d))
    return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                  std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(std::chrono::sys_days(ymd));
}

Date Date::from_ymd(int y, unsigned m, unsigned d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!ymd.ok()) throw InvalidInput("invalid calendar date");
  return Date(std::chrono::sys_days(ymd));
}

std::string Date::iso() const {
  std::chrono::year_month_day ymd{days_};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                unsigned(ymd.day()));
  return buf;
}

ReturnSeries::ReturnSeries(std::string ticker, std::vector<Date> dates, std::vector<Rate> returns)
    : ticker_(std::move(ticker)), dates_(std::move(dates)), returns_(std::move(returns)) {
  if (returns_.empty()) throw InvalidInput("series '" + ticker_ + "' is empty");
  if (dates_.size() != returns_.size())
    throw InvalidInput("series '" + ticker_ + "': dates and returns differ in length");
  for (std::size_t i = 0; i < returns_.size(); ++i) {
    if (!std::isfinite(returns_[i]) || returns_[i] <= -1.0)
      throw DomainError("series '" + ticker_ + "': return <= -1 or non-finite on " + dates_[i].iso());
    if (i > 0 && !(dates_[i - 1] < dates_[i]))
      throw InvalidInput("series '" + ticker_ + "': dates not strictly increasing at " + dates_[i].iso());
  }
}

ReturnSeries ReturnSeries::slice(std::size_t first, std::size_t last) const {
  if (first >= last || last > size()) throw InvalidInput("slice out of range");
  return ReturnSeries(ticker_, {dates_.begin() + first, dates_.begin() + last},
                      {returns_.begin() + first, returns_.begin() + last});
}

std::vector<Date> weekday_calendar(Date start, std::size_t n) {
  using std::chrono::days;
  std::vector<Date> out;
  out.reserve(n);
  auto d = start.days();
  while (out.size() < n) {
    std::chrono::weekday wd{d};
    if (wd != std::chrono::Saturday && wd != std::chrono::Sunday) out.emplace_back(d);
    d += days{1};
  }
  return out;
}

}  // namespace smclab
