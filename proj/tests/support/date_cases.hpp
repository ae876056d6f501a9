#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "talentrank/common/date.hpp"

namespace golden {

// Reference date for open-ended ranges.
inline constexpr talentrank::Date kReference{2019, 3, 15};

struct DateCase {
  std::string text;
  std::string start;  // mm/dd/yyyy
  std::string end;    // mm/dd/yyyy, or "Present"
  int months;
  std::string rule;
};

inline void PrintTo(const DateCase& c, std::ostream* os) { *os << '"' << c.text << '"'; }

// Expected values worked out by hand from the normalization rules.
inline const std::vector<DateCase>& date_cases() {
  static const std::vector<DateCase> kCases = {
      {"Summer 2015", "06/01/2015", "08/31/2015", 3, "summer is Jun-Aug"},
      {"Jan 2017 - Present", "01/01/2017", "Present", 27, "present resolves to reference"},
      {"Jan 2017 - Now", "01/01/2017", "Present", 27, "now is an open end"},
      {"2004,10 - 2005,9", "10/01/2004", "09/30/2005", 12, "year,month pairs"},
      {"2004,10-2005,9", "10/01/2004", "09/30/2005", 12, "pairs without spaces"},
      {"Spring 2016", "03/01/2016", "05/31/2016", 3, "spring is Mar-May"},
      {"Fall 2014", "09/01/2014", "11/30/2014", 3, "fall is Sep-Nov"},
      {"Autumn 2014", "09/01/2014", "11/30/2014", 3, "autumn equals fall"},
      {"Winter 2015", "12/01/2015", "02/29/2016", 3, "winter crosses into a leap year"},
      {"Winter 2018", "12/01/2018", "02/28/2019", 3, "winter crosses into next year"},
      {"2015", "01/01/2015", "12/31/2015", 12, "bare year widens to the year"},
      {"2012 - 2015", "01/01/2012", "12/31/2015", 48, "year range is inclusive"},
      {"Jan 2017", "01/01/2017", "01/31/2017", 1, "abbreviated month"},
      {"September, 2015", "09/01/2015", "09/30/2015", 1, "full month with comma"},
      {"Sept 2015", "09/01/2015", "09/30/2015", 1, "sept abbreviation"},
      {"Feb 2016", "02/01/2016", "02/29/2016", 1, "leap february"},
      {"Feb 2015", "02/01/2015", "02/28/2015", 1, "common february"},
      {"10/2004", "10/01/2004", "10/31/2004", 1, "month/year"},
      {"2004-10", "10/01/2004", "10/31/2004", 1, "year-month"},
      {"10.2004", "10/01/2004", "10/31/2004", 1, "month.year"},
      {"06/01/2015", "06/01/2015", "06/01/2015", 1, "full US date"},
      {"2015-06-01", "06/01/2015", "06/01/2015", 1, "full ISO date"},
      {"06/01/2015 - 08/15/2016", "06/01/2015", "08/15/2016", 15, "full date range"},
      {"Mar 2010 \xE2\x80\x93 Jun 2012", "03/01/2010", "06/30/2012", 28, "en dash"},
      {"Mar 2010 \xE2\x80\x94 Jun 2012", "03/01/2010", "06/30/2012", 28, "em dash"},
      {"Mar 2010 to Jun 2012", "03/01/2010", "06/30/2012", 28, "'to' joins a range"},
      {"Mar 2010 until Jun 2012", "03/01/2010", "06/30/2012", 28, "'until' joins a range"},
      {"since 2018", "01/01/2018", "Present", 15, "since opens a range"},
      {"Since March 2018", "03/01/2018", "Present", 13, "since with a month"},
      {"2016 - Current", "01/01/2016", "Present", 39, "current is an open end"},
      {"May 2018 - today", "05/01/2018", "Present", 11, "today is an open end"},
      {"Summer 2015 - Fall 2016", "06/01/2015", "11/30/2016", 18, "season range"},
      {"JANUARY 2019 - MARCH 2019", "01/01/2019", "03/31/2019", 3, "case-insensitive"},
      {"Dec 2018 - Present", "12/01/2018", "Present", 4, "present within a year"},
      {"(Jan 2017 - Present)", "01/01/2017", "Present", 27, "surrounding brackets"},
      {"Jun 2012 - Jun 2012", "06/01/2012", "06/30/2012", 1, "one-month range"},
  };
  return kCases;
}

// Expressions that must be rejected with the original text.
inline const std::vector<std::string>& rejected_dates() {
  static const std::vector<std::string> kRejected = {
      "Fall", "2017 - 2015", "13/2015", "Present", "02/30/2015", "next year", "",
  };
  return kRejected;
}

}  // namespace golden
