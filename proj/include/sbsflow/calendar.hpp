#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace sbsflow {

/// Timezone-free calendar date.
using Date = std::chrono::sys_days;

/// Year-month pair used to index monthly series.
struct YearMonth {
  int year = 0;
  unsigned month = 1;  // 1..12

  friend auto operator<=>(const YearMonth&, const YearMonth&) = default;

  YearMonth next() const noexcept;
  /// Whole months from `*this` to `other` (negative if `other` is earlier).
  int months_until(const YearMonth& other) const noexcept;
};

YearMonth year_month_of(Date d) noexcept;

/// Parses `text` against a strftime-style `format` supporting %Y, %m, %d and %%.
/// Anything after the matched prefix is accepted only if it starts with 'T' or
/// a space (a time-of-day suffix, which is ignored).
std::optional<Date> parse_date(std::string_view text, std::string_view format = "%Y-%m-%d");

/// Parses "YYYY-MM".
std::optional<YearMonth> parse_year_month(std::string_view text);

std::string format_date(Date d);
std::string format_year_month(const YearMonth& ym);

}  // namespace sbsflow
