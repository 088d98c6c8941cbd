#include "elan/dates.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace elan {

// Era-based civil calendar conversion (Howard Hinnant's algorithm).
std::int64_t days_from_civil(int year, unsigned month, unsigned day) {
    const int y = year - (month <= 2 ? 1 : 0);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const auto yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day) {
    days += 719468;
    const std::int64_t era = (days >= 0 ? days : days - 146096) / 146097;
    const auto doe = static_cast<unsigned>(days - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const auto y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    day = doy - (153 * mp + 2) / 5 + 1;
    month = mp + (mp < 10 ? 3 : -9);
    year = static_cast<int>(y + (month <= 2 ? 1 : 0));
}

bool parse_iso_date(const std::string& s, int& year, unsigned& month, unsigned& day) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i == 4 || i == 7) continue;
        if (s[i] < '0' || s[i] > '9') return false;
    }
    year = std::stoi(s.substr(0, 4));
    month = static_cast<unsigned>(std::stoi(s.substr(5, 2)));
    day = static_cast<unsigned>(std::stoi(s.substr(8, 2)));
    if (month < 1 || month > 12 || day < 1 || day > 31) return false;
    // Reject nonexistent dates by round-tripping.
    int y2;
    unsigned m2, d2;
    civil_from_days(days_from_civil(year, month, day), y2, m2, d2);
    return y2 == year && m2 == month && d2 == day;
}

double year_fraction_from_iso(const std::string& iso) {
    int y;
    unsigned m, d;
    if (!parse_iso_date(iso, y, m, d))
        throw std::invalid_argument("bad ISO-8601 date: " + iso);
    return 1970.0 + static_cast<double>(days_from_civil(y, m, d)) / kDaysPerYear;
}

std::string iso_from_year_fraction(double year_fraction) {
    if (!std::isfinite(year_fraction))
        throw std::invalid_argument("iso_from_year_fraction: non-finite input");
    const auto days =
        static_cast<std::int64_t>(std::llround((year_fraction - 1970.0) * kDaysPerYear));
    int y;
    unsigned m, d;
    civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

}  // namespace elan
