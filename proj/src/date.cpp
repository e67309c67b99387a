#include "ratekit/date.hpp"

#include <cctype>
#include <cstdio>

namespace ratekit {

Date parse_date(const std::string& text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-')
        throw InputError("invalid date '" + text + "': expected YYYY-MM-DD");
    for (int i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw InputError("invalid date '" + text + "': expected YYYY-MM-DD");
    const int y = std::stoi(text.substr(0, 4));
    const int m = std::stoi(text.substr(5, 2));
    const int d = std::stoi(text.substr(8, 2));
    if (m < 1 || m > 12 || d < 1 || d > 31)
        throw InputError("invalid date '" + text + "': out-of-range month or day");
    const Date result = make_date(y, m, d);
    const CivilDate back = civil(result);
    if (back.year != y || back.month != m || back.day != d)
        throw InputError("invalid date '" + text + "': no such calendar day");
    return result;
}

std::string format_date(Date d) {
    const CivilDate c = civil(d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.year, c.month, c.day);
    return buf;
}

Date month_end(Date d) {
    const CivilDate c = civil(d);
    const int ny = c.month == 12 ? c.year + 1 : c.year;
    const int nm = c.month == 12 ? 1 : c.month + 1;
    return make_date(ny, nm, 1) - 1;
}

} // namespace ratekit
