#include "crimenews/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>

#include "crimenews/error.hpp"

namespace crimenews::data {
std::optional<std::string_view> embedded_file(std::string_view name);
}

namespace crimenews::io {

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

void write_text(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) raise(ErrorCode::Io, "cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) raise(ErrorCode::Io, "short write to " + path.string());
}

std::string_view trim(std::string_view text) {
    constexpr std::string_view ws = " \t\r\n";
    const auto first = text.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(ws);
    return text.substr(first, last - first + 1);
}

std::vector<std::string> parse_word_list(std::string_view text) {
    std::vector<std::string> words;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = trim(text.substr(pos, end - pos));
        if (!line.empty() && line.front() != '#') words.emplace_back(line);
        pos = end + 1;
    }
    return words;
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
    return parse_word_list(read_text(path));
}

std::string_view bundled(std::string_view name) {
    if (auto hit = data::embedded_file(name)) return *hit;
    raise(ErrorCode::Io, "no bundled data file named " + std::string(name));
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) raise(ErrorCode::InvalidArgument, "cannot format double");
    return std::string(buf, ptr);
}

bool parse_double(std::string_view text, double& out) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

bool parse_int(std::string_view text, long long& out) {
    text = trim(text);
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

void write_f64_block(const std::filesystem::path& path, std::span<const double> values) {
    std::string bytes(values.size() * 8, '\0');
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto bits = std::bit_cast<std::uint64_t>(values[i]);
        for (int b = 0; b < 8; ++b) {
            bytes[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
        }
    }
    write_text(path, bytes);
}

std::vector<double> read_f64_block(const std::filesystem::path& path) {
    const std::string bytes = read_text(path);
    if (bytes.size() % 8 != 0) {
        raise(ErrorCode::MalformedValue, path.string() + " is not a whole number of f64 values");
    }
    std::vector<double> values(bytes.size() / 8);
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b) {
            bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[i * 8 + b])) << (8 * b);
        }
        values[i] = std::bit_cast<double>(bits);
    }
    return values;
}

}  // namespace crimenews::io
