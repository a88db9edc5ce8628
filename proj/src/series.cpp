#include "tsar/series.hpp"
#include "tsar/common.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tsar {

void Series::validate() const {
    if (values.empty())
        throw ValidationError("series is empty");
    if (!timestamps.empty() && timestamps.size() != values.size())
        throw ValidationError("timestamp column length does not match value column");
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i]))
            throw ValidationError("non-finite value at row " + std::to_string(i + 1));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

Series read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line))
        throw IoError("'" + path + "': empty file, expected a header row");

    auto header = split_csv_line(line);
    int value_col = -1, ts_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        auto h = trim(header[i]);
        if (h == "value") value_col = static_cast<int>(i);
        if (h == "timestamp") ts_col = static_cast<int>(i);
    }
    if (value_col < 0)
        throw IoError("'" + path + "': header row has no 'value' column");

    Series s;
    std::vector<std::size_t> bad_rows;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (static_cast<std::size_t>(value_col) >= cells.size()) {
            bad_rows.push_back(row);
            continue;
        }
        const std::string cell = trim(cells[value_col]);
        char* end = nullptr;
        double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
            bad_rows.push_back(row);
            continue;
        }
        s.values.push_back(v);
        if (ts_col >= 0 && static_cast<std::size_t>(ts_col) < cells.size())
            s.timestamps.push_back(trim(cells[ts_col]));
    }
    if (!bad_rows.empty()) {
        std::string msg = "'" + path + "': unparseable value at row";
        msg += bad_rows.size() > 1 ? "s " : " ";
        for (std::size_t i = 0; i < bad_rows.size() && i < 20; ++i)
            msg += (i ? ", " : "") + std::to_string(bad_rows[i]);
        if (bad_rows.size() > 20) msg += ", ...";
        throw IoError(msg);
    }
    if (s.values.empty())
        throw IoError("'" + path + "': no data rows");
    return s;
}

void write_series_csv(const Series& s, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    const bool with_ts = !s.timestamps.empty();
    out << (with_ts ? "timestamp,value\n" : "value\n");
    char buf[64];
    for (std::size_t i = 0; i < s.values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", s.values[i]);
        if (with_ts)
            out << s.timestamps[i] << ',';
        out << buf << '\n';
    }
    if (!out)
        throw IoError("write to '" + path + "' failed");
}

double mean(const std::vector<double>& v) {
    if (v.empty()) throw ValidationError("mean of empty vector");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size());
}

} // namespace tsar
