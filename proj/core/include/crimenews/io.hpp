#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace crimenews::io {

std::string read_text(const std::filesystem::path& path);

/// Writes `content` to `path`, creating parent directories.
void write_text(const std::filesystem::path& path, std::string_view content);

/// One entry per line; blank lines and lines starting with '#' are skipped,
/// surrounding whitespace trimmed.
std::vector<std::string> parse_word_list(std::string_view text);
std::vector<std::string> read_word_list(const std::filesystem::path& path);

/// Contents of a data file compiled into the library, e.g. "stoplist.txt"
/// or "gazetteer/gpe.txt". Throws Error(Io) for an unknown name.
std::string_view bundled(std::string_view name);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Parses a whole string as a double; false on trailing garbage or empty input.
bool parse_double(std::string_view text, double& out);
bool parse_int(std::string_view text, long long& out);

std::string_view trim(std::string_view text);

/// Raw little-endian IEEE-754 binary64 block, row-major.
void write_f64_block(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_f64_block(const std::filesystem::path& path);

}  // namespace crimenews::io
