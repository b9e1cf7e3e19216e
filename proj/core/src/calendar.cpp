#include "sharpe_rmt/calendar.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace sharpe_rmt {

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed date '" + std::string(whole) + "'");
  }
  return v;
}

bool leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && leap(y) ? 29 : days[m - 1];
}

}  // namespace

std::string Date::iso() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

YearMonth YearMonth::plus(int months) const {
  const int idx = year * 12 + (month - 1) + months;
  const int y = idx >= 0 ? idx / 12 : (idx - 11) / 12;
  return YearMonth{y, idx - y * 12 + 1};
}

std::string YearMonth::iso() const {
  char buf[12];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

int months_between(const YearMonth& a, const YearMonth& b) {
  return (b.year - a.year) * 12 + (b.month - a.month);
}

Date parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') {
    throw std::invalid_argument("malformed date '" + std::string(s) + "' (expected YYYY-MM-DD)");
  }
  Date d{parse_int(s.substr(0, 4), s), parse_int(s.substr(5, 2), s), parse_int(s.substr(8, 2), s)};
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month)) {
    throw std::invalid_argument("invalid calendar date '" + std::string(s) + "'");
  }
  return d;
}

YearMonth parse_year_month(std::string_view s) {
  if (s.size() == 10) return year_month(parse_date(s));
  if (s.size() != 7 || s[4] != '-') {
    throw std::invalid_argument("malformed month '" + std::string(s) + "' (expected YYYY-MM)");
  }
  YearMonth ym{parse_int(s.substr(0, 4), s), parse_int(s.substr(5, 2), s)};
  if (ym.month < 1 || ym.month > 12) {
    throw std::invalid_argument("invalid month '" + std::string(s) + "'");
  }
  return ym;
}

}  // namespace sharpe_rmt
