#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace sharpe_rmt {

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
  std::string iso() const;
};

struct YearMonth {
  int year = 1970;
  int month = 1;

  auto operator<=>(const YearMonth&) const = default;
  YearMonth plus(int months) const;
  std::string iso() const;  // "YYYY-MM"
  Date first_day() const { return Date{year, month, 1}; }
};

inline YearMonth year_month(const Date& d) { return YearMonth{d.year, d.month}; }

// Number of months from a to b (b - a).
int months_between(const YearMonth& a, const YearMonth& b);

// "YYYY-MM-DD"; throws std::invalid_argument on malformed or impossible dates.
Date parse_date(std::string_view s);
// "YYYY-MM" or "YYYY-MM-DD" (day ignored)
YearMonth parse_year_month(std::string_view s);

}  // namespace sharpe_rmt
