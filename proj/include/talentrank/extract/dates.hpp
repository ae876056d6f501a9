#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "talentrank/common/date.hpp"

namespace talentrank::extract {

struct DateSpan {
  Date start;
  std::optional<Date> end;  // unset when open-ended
  Date resolved_end;        // end, or the reference date when open-ended

  bool open_ended() const { return !end.has_value(); }
  bool operator==(const DateSpan&) const = default;
};

// Normalizes free-form résumé date expressions:
//   month name/abbreviation + year      "Jan 2017", "September, 2015"
//   numeric pairs                       "2004,10" "10/2004" "2004-10" "10.2004"
//   full dates                          "06/01/2015" (mm/dd/yyyy), "2015-06-01"
//   bare year                           "2015"
//   season + year                       "Summer 2015"
//   ranges joined by '-', en/em dash, "to", "until"
//   open ends "Present", "Now", "Current", "Today", and "since <date>"
// Partial dates widen to their unit boundaries. Throws NormalizationError
// carrying the original text when nothing matches or start > end.
DateSpan normalize_date_expression(std::string_view text, const Date& reference_date);

// Inclusive month count over [start, resolved_end].
int months(const DateSpan& span);

// "mm/dd/yyyy - mm/dd/yyyy", or "mm/dd/yyyy - Present" when open-ended.
std::string render(const DateSpan& span);

// Longest substring of a line (on whitespace-token boundaries) that
// normalizes; returns the matched text and span.
struct DateMatch {
  std::string text;
  DateSpan span;
  std::size_t first_token = 0;
  std::size_t last_token = 0;  // inclusive
};
std::optional<DateMatch> find_date_expression(std::string_view line, const Date& reference_date);

// Same search but only accepts two-sided ranges (including open-ended ones).
std::optional<DateMatch> find_date_range(std::string_view line, const Date& reference_date);

// The line with the matched tokens removed, remaining tokens single-spaced.
std::string remove_date(std::string_view line, const DateMatch& match);

}  // namespace talentrank::extract
