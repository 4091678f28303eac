#pragma once

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppfd/time_series.hpp"

namespace ppfd {

namespace detail {

// days since 1970-01-01 for a civil date (Howard Hinnant's algorithm)
inline std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const auto doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const auto yr = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

} // namespace detail

// Accepts "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM[:SS]" with an optional trailing
// 'Z' and a space in place of 'T'. Everything is treated as UTC.
inline Instant parse_iso8601(const std::string& text) {
    int y = 0, mo = 0, da = 0, h = 0, mi = 0, se = 0;
    std::string s = text;
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();
    for (auto& ch : s)
        if (ch == 'T' || ch == 't') ch = ' ';
    const int fields =
        std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &da, &h, &mi, &se);
    if (fields != 3 && fields != 5 && fields != 6)
        throw std::invalid_argument("unparseable timestamp: " + text);
    if (mo < 1 || mo > 12 || da < 1 || da > 31 || h < 0 || h > 23 || mi < 0 ||
        mi > 59 || se < 0 || se > 60)
        throw std::invalid_argument("timestamp out of range: " + text);
    return detail::days_from_civil(y, static_cast<unsigned>(mo),
                                   static_cast<unsigned>(da)) *
               86400 +
           h * 3600 + mi * 60 + se;
}

inline std::string format_iso8601(Instant t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

// "1d", "12h", "30m", "45s" or a bare second count.
inline Duration parse_step(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty step");
    std::size_t pos = 0;
    const long long v = std::stoll(text, &pos);
    if (v <= 0) throw std::invalid_argument("step must be positive: " + text);
    Duration mult = 1;
    if (pos < text.size()) {
        if (pos + 1 != text.size())
            throw std::invalid_argument("bad step suffix: " + text);
        switch (text[pos]) {
            case 's': mult = 1; break;
            case 'm': mult = 60; break;
            case 'h': mult = 3600; break;
            case 'd': mult = 86400; break;
            default: throw std::invalid_argument("bad step suffix: " + text);
        }
    }
    return v * mult;
}

// Either an ISO timestamp or a bare integer, as used by --truncate-after.
inline Instant parse_instant(const std::string& text, Duration step) {
    if (text.find('-') != std::string::npos ||
        text.find(':') != std::string::npos)
        return parse_iso8601(text);
    return static_cast<Instant>(std::stoll(text)) * step;
}

struct CsvData {
    std::vector<Instant> timestamps;
    std::vector<double> values;
    bool integer_timestamps = false;
};

// Reads a `timestamp,value` CSV. Timestamps are either ISO-8601 or bare
// non-negative integer grid indices; integer mode needs the nominal step to
// place indices on a time grid.
inline CsvData read_csv(const std::string& path,
                        std::optional<Duration> step = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);

    CsvData data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("timestamp", 0) == 0) continue;

        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected `timestamp,value`");
        const std::string ts = line.substr(0, comma);
        const std::string val = line.substr(comma + 1);

        const bool is_integer =
            ts.find('-') == std::string::npos && ts.find(':') == std::string::npos;
        if (data.timestamps.empty()) {
            data.integer_timestamps = is_integer;
        } else if (is_integer != data.integer_timestamps) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": mixed timestamp styles");
        }

        Instant t;
        try {
            if (is_integer) {
                const long long idx = std::stoll(ts);
                if (idx < 0) throw std::invalid_argument("negative index");
                if (!step)
                    throw std::runtime_error(
                        "integer timestamps require --step");
                t = static_cast<Instant>(idx) * *step;
            } else {
                t = parse_iso8601(ts);
            }
            std::size_t pos = 0;
            const double v = std::stod(val, &pos);
            while (pos < val.size() && std::isspace(static_cast<unsigned char>(val[pos])))
                ++pos;
            if (pos != val.size())
                throw std::invalid_argument("trailing characters in value");
            data.values.push_back(v);
        } catch (const std::runtime_error&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " +
                                     e.what());
        }
        data.timestamps.push_back(t);
    }
    if (data.timestamps.empty())
        throw std::runtime_error(path + ": no data rows");
    return data;
}

inline void write_csv(const std::string& path, const TimeSeries& series,
                      bool iso_timestamps = false) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << "timestamp,value\n";
    out.precision(17);
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (iso_timestamps)
            out << format_iso8601(series.time_at(t));
        else
            out << t;
        out << ',' << series.values[t] << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace ppfd
