#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace crimenews::csv {

using Row = std::vector<std::string>;

/// A parsed RFC-4180 file: the header row plus data rows. Rows keep the
/// 1-based physical record number they started on for error reporting.
struct Table {
    Row header;
    std::vector<Row> rows;
    std::vector<std::size_t> record_numbers;

    /// Index of `column` in the header, or npos.
    std::size_t column(std::string_view name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Parses CSV text. Quoted fields may contain commas, doubled quotes and
/// newlines. A UTF-8 BOM is stripped and CRLF line endings are accepted.
/// Throws Error(MalformedValue) on an unterminated quoted field.
Table parse(std::string_view text);

Table read_file(const std::filesystem::path& path);

/// Quotes a field only when it contains a separator, quote, or line break.
std::string escape(std::string_view field);

std::string format_row(const Row& row);

/// Incrementally builds CSV text with "\n" line endings.
class Writer {
public:
    void row(const Row& fields);
    const std::string& str() const { return out_; }

private:
    std::string out_;
};

}  // namespace crimenews::csv
