#include "statecast/time_series.hpp"

#include <cstdio>

#include "statecast/errors.hpp"

namespace statecast::dataio {

namespace {

// Days since 1970-01-01 for a civil date (Hinnant's algorithm).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yr + (m <= 2));
}

} // namespace

std::size_t TimeSeries::observed_count() const {
    std::size_t n = 0;
    for (bool miss : missing) {
        if (!miss) ++n;
    }
    return n;
}

void TimeSeries::validate() const {
    if (timestamps.size() != values.size() || missing.size() != values.size()) {
        throw ValidationError("time series arrays disagree in length");
    }
    if (interval_seconds <= 0) {
        throw ValidationError("time series interval must be positive");
    }
    for (std::size_t i = 1; i < timestamps.size(); ++i) {
        if (timestamps[i] <= timestamps[i - 1]) {
            throw ValidationError("timestamps not strictly increasing at index " +
                                  std::to_string(i));
        }
    }
}

std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec) {
    if (spec.split_index + spec.horizon > series.size()) {
        throw ValidationError("split: split_index " + std::to_string(spec.split_index) +
                              " + horizon " + std::to_string(spec.horizon) +
                              " exceeds series length " + std::to_string(series.size()));
    }
    auto slice = [&](std::size_t begin, std::size_t end) {
        TimeSeries out;
        out.interval_seconds = series.interval_seconds;
        out.timestamps.assign(series.timestamps.begin() + begin, series.timestamps.begin() + end);
        out.values.assign(series.values.begin() + begin, series.values.begin() + end);
        out.missing.assign(series.missing.begin() + begin, series.missing.begin() + end);
        return out;
    };
    return {slice(0, spec.split_index),
            slice(spec.split_index, spec.split_index + spec.horizon)};
}

std::string format_timestamp(std::int64_t seconds) {
    std::int64_t days = seconds / 86400;
    std::int64_t rem = seconds % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>(rem % 3600 / 60),
                  static_cast<int>(rem % 60));
    return buf;
}

std::int64_t parse_timestamp(const std::string& text) {
    int y, mo, d, h, mi, s;
    int n = std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d", &y, &mo, &d, &h, &mi, &s);
    if (n != 6) {
        // Allow a space separator as well.
        n = std::sscanf(text.c_str(), "%4d-%2d-%2d %2d:%2d:%2d", &y, &mo, &d, &h, &mi, &s);
    }
    if (n != 6 || mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi < 0 ||
        mi > 59 || s < 0 || s > 60) {
        throw ParseError("unparsable timestamp: '" + text + "'");
    }
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

std::int64_t time_of_day_seconds(std::int64_t timestamp) {
    std::int64_t rem = timestamp % 86400;
    return rem < 0 ? rem + 86400 : rem;
}

std::int64_t parse_time_of_day(const std::string& text) {
    int h, mi;
    char tail;
    if (std::sscanf(text.c_str(), "%d:%d%c", &h, &mi, &tail) != 2 || h < 0 || h > 23 ||
        mi < 0 || mi > 59) {
        throw ValidationError("invalid time of day: '" + text + "'");
    }
    return h * 3600 + mi * 60;
}

} // namespace statecast::dataio
