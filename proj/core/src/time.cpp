#include "roadpulse/time.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "roadpulse/error.hpp"

namespace roadpulse {

namespace {

// Howard Hinnant's public-domain civil-date algorithms.
std::int64_t days_from_civil_impl(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

CivilDate civil_from_days_impl(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2) {
        const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[static_cast<std::size_t>(month - 1)];
}

bool parse_int(std::string_view text, int& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

} // namespace

std::int64_t days_from_civil(CivilDate d) {
    return days_from_civil_impl(d.year, static_cast<unsigned>(d.month), static_cast<unsigned>(d.day));
}

CivilDate civil_from_days(std::int64_t days) {
    return civil_from_days_impl(days);
}

bool is_valid_date(CivilDate d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 && d.day <= days_in_month(d.year, d.month);
}

CivilDate parse_civil_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw Error(ErrorCode::Config, "bad date '" + std::string(text) + "', expected YYYY-MM-DD");
    }
    CivilDate d;
    if (!parse_int(text.substr(0, 4), d.year) || !parse_int(text.substr(5, 2), d.month) ||
        !parse_int(text.substr(8, 2), d.day) || !is_valid_date(d)) {
        throw Error(ErrorCode::Config, "bad date '" + std::string(text) + "'");
    }
    return d;
}

std::string to_string(CivilDate d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

UtcOffset parse_utc_offset(std::string_view text) {
    if (text == "Z" || text == "z" || text == "0") return UtcOffset{0};
    if (text.empty() || (text[0] != '+' && text[0] != '-')) {
        throw Error(ErrorCode::Config, "bad UTC offset '" + std::string(text) + "'");
    }
    const int sign = text[0] == '-' ? -1 : 1;
    std::string_view body = text.substr(1);
    int hours = 0;
    int mins = 0;
    bool ok = false;
    if (body.size() <= 2) {
        ok = parse_int(body, hours);
    } else if (body.size() == 5 && body[2] == ':') {
        ok = parse_int(body.substr(0, 2), hours) && parse_int(body.substr(3, 2), mins);
    } else if (body.size() == 4) {
        ok = parse_int(body.substr(0, 2), hours) && parse_int(body.substr(2, 2), mins);
    }
    if (!ok || hours < 0 || mins < 0 || mins > 59 || hours * 60 + mins > 18 * 60) {
        throw Error(ErrorCode::Config, "bad UTC offset '" + std::string(text) + "'");
    }
    return UtcOffset{sign * (hours * 60 + mins)};
}

std::string to_string(UtcOffset offset) {
    const int total = offset.minutes;
    const int abs_total = total < 0 ? -total : total;
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%02d:%02d", total < 0 ? '-' : '+', abs_total / 60, abs_total % 60);
    return buf;
}

std::int64_t parse_iso8601(std::string_view text) {
    const auto fail = [&]() -> Error {
        return Error(ErrorCode::BadTimestamp, "bad timestamp '" + std::string(text) + "'", "created_at");
    };
    if (text.size() < 19) throw fail();
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't' && text[10] != ' ') ||
        text[13] != ':' || text[16] != ':') {
        throw fail();
    }
    CivilDate d;
    int hour = 0, minute = 0, second = 0;
    if (!parse_int(text.substr(0, 4), d.year) || !parse_int(text.substr(5, 2), d.month) ||
        !parse_int(text.substr(8, 2), d.day) || !parse_int(text.substr(11, 2), hour) ||
        !parse_int(text.substr(14, 2), minute) || !parse_int(text.substr(17, 2), second)) {
        throw fail();
    }
    if (!is_valid_date(d) || hour > 23 || minute > 59 || second > 60) throw fail();
    if (second == 60) second = 59; // fold leap seconds

    std::size_t pos = 19;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        const std::size_t start = pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
        if (pos == start) throw fail();
    }

    std::int64_t zone_seconds = 0;
    if (pos < text.size()) {
        const std::string_view zone = text.substr(pos);
        if (zone == "Z" || zone == "z") {
            zone_seconds = 0;
        } else if (zone[0] == '+' || zone[0] == '-') {
            try {
                zone_seconds = parse_utc_offset(zone).seconds();
            } catch (const Error&) {
                throw fail();
            }
        } else {
            throw fail();
        }
    }

    const std::int64_t day_number = days_from_civil(d);
    return day_number * 86400 + hour * 3600 + minute * 60 + second - zone_seconds;
}

std::string format_iso8601_utc(std::int64_t epoch_seconds) {
    const std::int64_t days = floor_div(epoch_seconds, 86400);
    const std::int64_t rem = epoch_seconds - days * 86400;
    const CivilDate d = civil_from_days(days);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", d.year, d.month, d.day,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60), static_cast<int>(rem % 60));
    return buf;
}

CivilDate local_date(std::int64_t epoch_seconds, UtcOffset offset) {
    return civil_from_days(floor_div(epoch_seconds + offset.seconds(), 86400));
}

} // namespace roadpulse
