#include "botdna/time_utils.hpp"

#include <array>
#include <cctype>
#include <cstdio>

#include "botdna/errors.hpp"

namespace botdna {
namespace {

constexpr std::array<const char*, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y += m <= 2;
}

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    out = v;
    return true;
}

int month_from_abbrev(std::string_view m) {
    for (int i = 0; i < 12; ++i)
        if (m == kMonths[static_cast<std::size_t>(i)]) return i + 1;
    return 0;
}

std::int64_t assemble(int year, int mon, int day, int hh, int mm, int ss,
                      int offset_sign, int off_h, int off_m) {
    std::int64_t t = days_from_civil(year, mon, day) * 86400 + hh * 3600 + mm * 60 + ss;
    return t - offset_sign * (off_h * 3600 + off_m * 60);
}

bool try_parse_twitter(std::string_view s, std::int64_t& out) {
    // "Wed Oct 10 20:19:24 +0000 2018"
    if (s.size() != 30) return false;
    if (s[3] != ' ' || s[7] != ' ' || s[10] != ' ' || s[19] != ' ' || s[25] != ' ')
        return false;
    int mon = month_from_abbrev(s.substr(4, 3));
    if (mon == 0) return false;
    int day, hh, mm, ss, year, off_h, off_m;
    if (!parse_int(s, 8, 2, day) || !parse_int(s, 11, 2, hh) ||
        !parse_int(s, 14, 2, mm) || !parse_int(s, 17, 2, ss) ||
        !parse_int(s, 21, 2, off_h) || !parse_int(s, 23, 2, off_m) ||
        !parse_int(s, 26, 4, year))
        return false;
    if (s[13] != ':' || s[16] != ':') return false;
    int sign = s[20] == '-' ? -1 : (s[20] == '+' ? 1 : 0);
    if (sign == 0) return false;
    out = assemble(year, mon, day, hh, mm, ss, sign, off_h, off_m);
    return true;
}

bool try_parse_iso(std::string_view s, std::int64_t& out) {
    // "2018-10-10T20:19:24Z" / "...+01:00" / "...+0100" / trailing fraction allowed
    int year, mon, day, hh, mm, ss;
    if (s.size() < 19) return false;
    if (!parse_int(s, 0, 4, year) || s[4] != '-' || !parse_int(s, 5, 2, mon) ||
        s[7] != '-' || !parse_int(s, 8, 2, day))
        return false;
    if (s[10] != 'T' && s[10] != ' ') return false;
    if (!parse_int(s, 11, 2, hh) || s[13] != ':' || !parse_int(s, 14, 2, mm) ||
        s[16] != ':' || !parse_int(s, 17, 2, ss))
        return false;
    std::size_t pos = 19;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    int sign = 1, off_h = 0, off_m = 0;
    if (pos == s.size()) {
        // no designator: treat as UTC
    } else if (s[pos] == 'Z' && pos + 1 == s.size()) {
        // UTC
    } else if (s[pos] == '+' || s[pos] == '-') {
        sign = s[pos] == '-' ? -1 : 1;
        ++pos;
        if (!parse_int(s, pos, 2, off_h)) return false;
        pos += 2;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (pos < s.size()) {
            if (!parse_int(s, pos, 2, off_m)) return false;
            pos += 2;
        }
        if (pos != s.size()) return false;
    } else {
        return false;
    }
    if (mon < 1 || mon > 12 || day < 1 || day > 31 || hh > 23 || mm > 59 || ss > 60)
        return false;
    out = assemble(year, mon, day, hh, mm, ss, sign, off_h, off_m);
    return true;
}

}  // namespace

std::int64_t parse_timestamp(std::string_view text) {
    std::int64_t out;
    if (try_parse_twitter(text, out)) return out;
    if (try_parse_iso(text, out)) return out;
    throw ParseError("unrecognized timestamp: \"" + std::string(text) + "\"", 0);
}

std::string format_iso8601(std::int64_t epoch_seconds) {
    std::int64_t days = epoch_seconds / 86400;
    std::int64_t rem = epoch_seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    int m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02d-%02dT%02d:%02d:%02dZ",
                  static_cast<long long>(y), m, d, static_cast<int>(rem / 3600),
                  static_cast<int>((rem / 60) % 60), static_cast<int>(rem % 60));
    return buf;
}

}  // namespace botdna
