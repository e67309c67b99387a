#pragma once

#include <cstdint>
#include <string>

#include "ratekit/errors.hpp"

namespace ratekit {

/// Calendar day, stored as days since 1970-01-01 (may be negative).
using Date = std::int32_t;

namespace detail {

// Howard Hinnant's civil-date algorithms (public domain).
constexpr std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yr + (m <= 2));
}

} // namespace detail

inline Date make_date(int year, int month, int day) {
    return static_cast<Date>(detail::days_from_civil(year, static_cast<unsigned>(month),
                                                     static_cast<unsigned>(day)));
}

struct CivilDate {
    int year;
    int month;
    int day;
};

inline CivilDate civil(Date d) {
    int y;
    unsigned m, dd;
    detail::civil_from_days(d, y, m, dd);
    return {y, static_cast<int>(m), static_cast<int>(dd)};
}

/// Parses strict ISO-8601 "YYYY-MM-DD".
Date parse_date(const std::string& text);

/// Formats as "YYYY-MM-DD".
std::string format_date(Date d);

/// 0 = Monday ... 6 = Sunday. 1970-01-01 was a Thursday.
inline int day_of_week(Date d) {
    return static_cast<int>((((d + 3) % 7) + 7) % 7);
}

inline bool is_first_of_month(Date d) { return civil(d).day == 1; }
inline bool is_last_of_month(Date d) { return civil(d + 1).day == 1; }
inline bool is_first_of_year(Date d) {
    const CivilDate c = civil(d);
    return c.month == 1 && c.day == 1;
}
inline bool is_last_of_year(Date d) {
    const CivilDate c = civil(d);
    return c.month == 12 && c.day == 31;
}

/// First day of the month containing d.
inline Date month_start(Date d) { return d - (civil(d).day - 1); }

/// Last day of the month containing d.
Date month_end(Date d);

} // namespace ratekit
