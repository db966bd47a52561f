#include "sbsflow/calendar.hpp"

#include <charconv>
#include <cstdio>

namespace sbsflow {
namespace {

bool read_digits(std::string_view text, std::size_t& pos, std::size_t max_digits, int& out) {
  std::size_t start = pos;
  int value = 0;
  while (pos < text.size() && pos - start < max_digits && text[pos] >= '0' && text[pos] <= '9') {
    value = value * 10 + (text[pos] - '0');
    ++pos;
  }
  if (pos == start) return false;
  out = value;
  return true;
}

}  // namespace

YearMonth YearMonth::next() const noexcept {
  return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

int YearMonth::months_until(const YearMonth& other) const noexcept {
  return (other.year - year) * 12 + static_cast<int>(other.month) - static_cast<int>(month);
}

YearMonth year_month_of(Date d) noexcept {
  std::chrono::year_month_day ymd{d};
  return {static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month())};
}

std::optional<Date> parse_date(std::string_view text, std::string_view format) {
  int year = -1, month = -1, day = -1;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < format.size(); ++f) {
    if (format[f] == '%' && f + 1 < format.size()) {
      char spec = format[++f];
      bool ok = true;
      switch (spec) {
        case 'Y': ok = read_digits(text, pos, 4, year); break;
        case 'm': ok = read_digits(text, pos, 2, month); break;
        case 'd': ok = read_digits(text, pos, 2, day); break;
        case '%': ok = pos < text.size() && text[pos++] == '%'; break;
        default: return std::nullopt;
      }
      if (!ok) return std::nullopt;
    } else {
      if (pos >= text.size() || text[pos] != format[f]) return std::nullopt;
      ++pos;
    }
  }
  if (pos < text.size() && text[pos] != 'T' && text[pos] != ' ') return std::nullopt;
  if (year < 0 || month < 0 || day < 0) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                                  std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

std::optional<YearMonth> parse_year_month(std::string_view text) {
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  int year = 0, month = 0;
  auto [p1, e1] = std::from_chars(text.data(), text.data() + 4, year);
  auto [p2, e2] = std::from_chars(text.data() + 5, text.data() + 7, month);
  if (e1 != std::errc{} || e2 != std::errc{} || p1 != text.data() + 4 || p2 != text.data() + 7) {
    return std::nullopt;
  }
  if (month < 1 || month > 12) return std::nullopt;
  return YearMonth{year, static_cast<unsigned>(month)};
}

std::string format_date(Date d) {
  std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::string format_year_month(const YearMonth& ym) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u", ym.year, ym.month);
  return buf;
}

}  // namespace sbsflow
