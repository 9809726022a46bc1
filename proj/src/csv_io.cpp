#include "statecast/csv_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "statecast/errors.hpp"

namespace statecast::dataio {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

int find_column(const std::vector<std::string>& header, const std::string& name,
                const std::string& path) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    throw ParseError(path + ": column '" + name + "' not found in header");
}

} // namespace

TimeSeries load_csv(const std::string& path, const ColumnMap& columns,
                    std::int64_t interval_seconds) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path + ": empty file, header row required");
    }
    const auto header = split_fields(line);
    const int ts_col = find_column(header, columns.timestamp, path);
    const int val_col = find_column(header, columns.value, path);

    std::vector<std::int64_t> raw_ts;
    std::vector<double> raw_val;
    std::vector<bool> raw_missing;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        const auto max_col = static_cast<std::size_t>(std::max(ts_col, val_col));
        if (fields.size() <= max_col) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": too few columns");
        }
        std::int64_t ts;
        try {
            ts = parse_timestamp(fields[ts_col]);
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
        if (!raw_ts.empty() && ts <= raw_ts.back()) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": timestamps not strictly increasing");
        }
        const std::string& cell = fields[val_col];
        if (cell.empty()) {
            raw_ts.push_back(ts);
            raw_val.push_back(0.0);
            raw_missing.push_back(true);
            continue;
        }
        char* end = nullptr;
        errno = 0;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || errno == ERANGE) {
            // Unparsable cell: keep the slot, mask it.
            raw_ts.push_back(ts);
            raw_val.push_back(0.0);
            raw_missing.push_back(true);
        } else {
            raw_ts.push_back(ts);
            raw_val.push_back(v);
            raw_missing.push_back(false);
        }
    }
    if (raw_ts.empty()) {
        throw ParseError(path + ": no data rows");
    }

    // Regularize onto the nominal grid anchored at the first timestamp;
    // rows between grid points are rejected, absent grid rows become gaps.
    TimeSeries out;
    out.interval_seconds = interval_seconds;
    const std::int64_t t0 = raw_ts.front();
    const std::int64_t span = raw_ts.back() - t0;
    const auto grid_len = static_cast<std::size_t>(span / interval_seconds) + 1;
    out.timestamps.resize(grid_len);
    out.values.assign(grid_len, 0.0);
    out.missing.assign(grid_len, true);
    for (std::size_t i = 0; i < grid_len; ++i) {
        out.timestamps[i] = t0 + static_cast<std::int64_t>(i) * interval_seconds;
    }
    for (std::size_t i = 0; i < raw_ts.size(); ++i) {
        const std::int64_t offset = raw_ts[i] - t0;
        if (offset % interval_seconds != 0) {
            throw ParseError(path + ": timestamp " + format_timestamp(raw_ts[i]) +
                             " is not on the " + std::to_string(interval_seconds) +
                             "s grid");
        }
        const auto idx = static_cast<std::size_t>(offset / interval_seconds);
        out.values[idx] = raw_val[i];
        out.missing[idx] = raw_missing[i];
    }
    return out;
}

void write_csv(const std::string& path, const TimeSeries& series, const ColumnMap& columns) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << columns.timestamp << ',' << columns.value << '\n';
    char buf[40];
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_timestamp(series.timestamps[i]) << ',';
        if (!series.missing[i]) {
            std::snprintf(buf, sizeof(buf), "%.17g", series.values[i]);
            out << buf;
        }
        out << '\n';
    }
    if (!out.good()) {
        throw IoError("write failed for '" + path + "'");
    }
}

std::set<std::int64_t> default_handheld_times() {
    return {5 * 3600, 12 * 3600, 20 * 3600 + 30 * 60};
}

TimeSeries resample_handheld(const TimeSeries& series,
                             const std::set<std::int64_t>& times_of_day) {
    for (std::int64_t tod : times_of_day) {
        if (tod < 0 || tod >= 86400 || tod % series.interval_seconds != 0) {
            throw ValidationError("handheld time of day " + std::to_string(tod) +
                                  "s is not on the sampling grid");
        }
    }
    TimeSeries out = series;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!times_of_day.contains(time_of_day_seconds(out.timestamps[i]))) {
            out.missing[i] = true;
        }
    }
    return out;
}

} // namespace statecast::dataio
