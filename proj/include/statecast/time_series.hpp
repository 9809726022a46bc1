#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace statecast::dataio {

/// Seconds in the nominal sampling grid (15 minutes).
inline constexpr std::int64_t kDefaultIntervalSeconds = 15 * 60;

/// Scalar sensor series on a regular grid. Timestamps are timezone-naive
/// local seconds. Missing samples stay in place and are flagged in the mask;
/// the grid is never decimated.
struct TimeSeries {
    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
    std::vector<bool> missing;  // true = no usable observation at this index
    std::int64_t interval_seconds = kDefaultIntervalSeconds;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    std::size_t observed_count() const;

    /// Throws ValidationError unless timestamps are strictly increasing and
    /// all parallel arrays agree in length.
    void validate() const;
};

struct SplitSpec {
    std::size_t split_index = 0;
    std::size_t horizon = 0;
};

/// train = [0, split_index), test = [split_index, split_index + horizon).
/// Values are carried over untouched, so the test slice keeps full-resolution
/// ground truth even when the input mask was thinned beforehand.
std::pair<TimeSeries, TimeSeries> split(const TimeSeries& series, const SplitSpec& spec);

/// Formats seconds as a timezone-naive RFC-3339-style local timestamp
/// (YYYY-MM-DDTHH:MM:SS).
std::string format_timestamp(std::int64_t seconds);

/// Parses the format produced by format_timestamp. Throws ParseError.
std::int64_t parse_timestamp(const std::string& text);

/// Seconds since local midnight for a grid timestamp.
std::int64_t time_of_day_seconds(std::int64_t timestamp);

/// Parses "HH:MM" into seconds since midnight. Throws ValidationError.
std::int64_t parse_time_of_day(const std::string& text);

} // namespace statecast::dataio
