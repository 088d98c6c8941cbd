#pragma once

#include <cstdint>
#include <string>

namespace elan {

/// Days since 1970-01-01 in the proleptic Gregorian calendar.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

/// Strict "YYYY-MM-DD" parse; returns false on malformed input.
bool parse_iso_date(const std::string& s, int& year, unsigned& month, unsigned& day);

/// Fractional-year timeline anchored at 1970-01-01 with a 365.2425-day year.
/// Dates round-trip exactly (year fractions round to the nearest day).
double year_fraction_from_iso(const std::string& iso);
std::string iso_from_year_fraction(double year_fraction);

/// Days per year of the fractional timeline.
inline constexpr double kDaysPerYear = 365.2425;

}  // namespace elan
