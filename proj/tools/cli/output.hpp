#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace sublinear::cli {

/// Effective configuration of one run, sorted by key.
using ConfigMap = std::map<std::string, std::string>;

/// 16 hex digits of the 64-bit FNV-1a hash of "key=value\n" lines.
std::string config_digest(const ConfigMap& config);

/// Simple CSV table writer: header row, then rows of preformatted cells.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}
    void add_row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    /// Comment lines (prefixed "# ") followed by the table.
    [[nodiscard]] std::string render(const std::vector<std::string>& comments) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes `content` to `path` through a sibling temp file and a rename, so
/// readers never observe a partial file. The temp file is removed on failure.
void write_atomically(const std::filesystem::path& path, std::string_view content);

/// Reads a flat key=value file. Blank lines and lines starting with '#'
/// are ignored; surrounding whitespace is trimmed.
ConfigMap read_config_file(const std::filesystem::path& path);

}  // namespace sublinear::cli
