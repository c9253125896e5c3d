#include "sublinear/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "sublinear/error.hpp"
#include "sublinear/format.hpp"

namespace sublinear {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

std::size_t resolve_column(const std::string& spec, const std::vector<std::string>* header) {
    if (!spec.empty() && spec.find_first_not_of("0123456789") == std::string::npos) {
        return static_cast<std::size_t>(std::stoul(spec));
    }
    if (header == nullptr) {
        throw ArgumentError("column '" + spec + "' is named but the file has no header");
    }
    for (std::size_t i = 0; i < header->size(); ++i) {
        if ((*header)[i] == spec) {
            return i;
        }
    }
    throw DataError("column '" + spec + "' not found in header");
}

}  // namespace

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::optional<double> parse_finite(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

std::vector<std::string> split_csv_record(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                field += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                field += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == delimiter) {
            fields.emplace_back(trim(field));
            field.clear();
        } else {
            field += ch;
        }
    }
    fields.emplace_back(trim(field));
    return fields;
}

TimeSeries ingest_csv(const std::filesystem::path& path, const CsvColumns& columns) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path.string() + "'");
    }
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        lines.push_back(std::move(line));
    }
    while (!lines.empty() && is_blank(lines.back())) {
        lines.pop_back();
    }

    std::size_t first_data = 0;
    std::vector<std::string> header;
    if (columns.has_header) {
        if (lines.empty()) {
            throw DataError("'" + path.string() + "' has no header row");
        }
        header = split_csv_record(lines[0], columns.delimiter);
        first_data = 1;
    }
    const auto* header_ptr = columns.has_header ? &header : nullptr;
    const std::size_t value_col = resolve_column(columns.value_column, header_ptr);
    std::optional<std::size_t> time_col;
    if (columns.timestamp_column) {
        time_col = resolve_column(*columns.timestamp_column, header_ptr);
    }

    std::vector<double> values;
    std::vector<std::string> stamps;
    for (std::size_t li = first_data; li < lines.size(); ++li) {
        const std::size_t row = li - first_data + 1;
        const std::string where = "row " + std::to_string(row) + " (line " + std::to_string(li + 1) + ")";
        if (is_blank(lines[li])) {
            throw DataError(where + " is blank");
        }
        const auto fields = split_csv_record(lines[li], columns.delimiter);
        const std::size_t needed = std::max(value_col, time_col.value_or(0)) + 1;
        if (fields.size() < needed) {
            throw DataError(where + " has " + std::to_string(fields.size()) + " fields, expected at least " +
                            std::to_string(needed));
        }
        const auto v = parse_finite(fields[value_col]);
        if (!v) {
            throw DataError(where + ": value '" + fields[value_col] + "' is not a finite number");
        }
        values.push_back(*v);
        if (time_col) {
            stamps.push_back(fields[*time_col]);
        }
    }
    if (values.empty()) {
        throw DataError("'" + path.string() + "' contains no data rows");
    }
    if (time_col) {
        return TimeSeries(std::move(values), std::move(stamps));
    }
    return TimeSeries(std::move(values));
}

}  // namespace sublinear
