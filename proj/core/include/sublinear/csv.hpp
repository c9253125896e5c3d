#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sublinear/envelope.hpp"

namespace sublinear {

/// Which columns to read. A column is either a zero-based index ("0", "2")
/// or a header name; naming a column by header requires has_header.
struct CsvColumns {
    std::string value_column = "0";
    std::optional<std::string> timestamp_column;
    bool has_header = false;
    char delimiter = ',';
};

/// Reads a series in file order. Rows whose value cell does not parse as
/// a finite number are rejected with their 1-based data-row number (the
/// header does not count); nothing is skipped. Blank lines are allowed only
/// at the end of the file. Throws DataError for a missing file, malformed
/// rows and non-monotone timestamps.
TimeSeries ingest_csv(const std::filesystem::path& path, const CsvColumns& columns);

/// Splits one CSV record. Double-quoted fields may contain the delimiter;
/// "" inside quotes is a literal quote. Surrounding whitespace is trimmed.
std::vector<std::string> split_csv_record(std::string_view line, char delimiter = ',');

/// Strict decimal parse of a whole cell; nullopt on trailing junk or non-finite.
std::optional<double> parse_finite(std::string_view text);

}  // namespace sublinear
