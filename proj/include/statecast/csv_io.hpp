#pragma once

#include <set>
#include <string>

#include "statecast/time_series.hpp"

namespace statecast::dataio {

/// Column-name mapping for sensor CSV files. Header row is required.
struct ColumnMap {
    std::string timestamp = "timestamp";
    std::string value = "value";
};

/// Reads a sensor CSV into a series on the nominal grid. Rows absent from
/// the grid become masked gaps; empty or unparsable value cells are masked
/// in place. Timestamps must parse and be strictly increasing.
TimeSeries load_csv(const std::string& path, const ColumnMap& columns = {},
                    std::int64_t interval_seconds = kDefaultIntervalSeconds);

/// Writes `timestamp,value` rows; missing samples get an empty value cell.
/// Values round-trip bit-exactly through load_csv.
void write_csv(const std::string& path, const TimeSeries& series,
               const ColumnMap& columns = {});

/// Default handheld sampling times (05h00, 12h00, 20h30).
std::set<std::int64_t> default_handheld_times();

/// Keeps only samples whose time of day is in `times_of_day` (seconds since
/// midnight); everything else is masked. Values and grid are untouched.
TimeSeries resample_handheld(const TimeSeries& series,
                             const std::set<std::int64_t>& times_of_day);

} // namespace statecast::dataio
