#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smclab {

/// Simple (decimal) return; 0.01 is +1%.
using Rate = double;

/// Calendar date used as an ordered label. No business-day logic.
class Date {
 public:
  constexpr Date() = default;
  explicit constexpr Date(std::chrono::sys_days days) : days_(days) {}

  /// Parses `YYYY-MM-DD`; nullopt on anything else (including invalid days).
  static std::optional<Date> parse(std::string_view text);
  static Date from_ymd(int y, unsigned m, unsigned d);

  std::string iso() const;
  constexpr std::chrono::sys_days days() const { return days_; }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

/// Dated daily simple returns for one ticker.
///
/// Invariants enforced at construction: at least one observation, dates
/// strictly increasing, every return finite and > -1.
class ReturnSeries {
 public:
  ReturnSeries(std::string ticker, std::vector<Date> dates, std::vector<Rate> returns);

  const std::string& ticker() const noexcept { return ticker_; }
  std::span<const Date> dates() const noexcept { return dates_; }
  std::span<const Rate> returns() const noexcept { return returns_; }
  std::size_t size() const noexcept { return returns_.size(); }

  /// Copy restricted to the half-open index range [first, last).
  ReturnSeries slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const ReturnSeries&, const ReturnSeries&) = default;

 private:
  std::string ticker_;
  std::vector<Date> dates_;
  std::vector<Rate> returns_;
};

/// Consecutive weekdays starting at `start` (itself moved forward if it is a weekend).
std::vector<Date> weekday_calendar(Date start, std::size_t n);

}  // namespace smclab
