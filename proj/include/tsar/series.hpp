#ifndef TSAR_SERIES_HPP
#define TSAR_SERIES_HPP

#include <string>
#include <vector>

namespace tsar {

/// Ordered real-valued observations with optional ISO-8601 timestamps.
/// The universal input/output of the simulators and estimators.
struct Series {
    std::vector<double> values;
    std::vector<std::string> timestamps; // empty, or one entry per value

    Series() = default;
    explicit Series(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    double operator[](std::size_t i) const { return values[i]; }

    /// Throws ValidationError if empty or any value is non-finite.
    void validate() const;
};

/// Reads a series from CSV. A header row is required; the value column must
/// be named "value". An optional "timestamp" column is carried through but
/// ignored by the math. Parse errors report 1-based row numbers.
Series read_series_csv(const std::string& path);

/// Writes a series as CSV ("timestamp,value" when timestamps are present,
/// plain "value" otherwise). Output is byte-stable for identical input.
void write_series_csv(const Series& s, const std::string& path);

double mean(const std::vector<double>& v);
double variance(const std::vector<double>& v); // population (divide by n)

} // namespace tsar

#endif
