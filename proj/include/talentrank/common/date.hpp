#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace talentrank {

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
};

bool is_leap_year(int year);
int days_in_month(int year, int month);
bool is_valid(const Date& d);

// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t to_days(const Date& d);

// "mm/dd/yyyy"
std::string format_us(const Date& d);
// "yyyy-mm-dd"
std::string format_iso(const Date& d);
std::optional<Date> parse_iso(std::string_view s);

}  // namespace talentrank
