#include "crimenews/csv.hpp"

#include "crimenews/error.hpp"
#include "crimenews/io.hpp"

namespace crimenews::csv {

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return npos;
}

Table parse(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    Table table;
    Row current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    std::size_t record_start = 1;
    bool have_header = false;

    auto finish_record = [&] {
        current.push_back(std::move(field));
        field.clear();
        field_started = false;
        // Skip fully blank lines.
        if (current.size() == 1 && current.front().empty()) {
            current.clear();
            return;
        }
        if (!have_header) {
            table.header = std::move(current);
            for (auto& h : table.header) {
                while (!h.empty() && (h.back() == ' ' || h.back() == '\t')) h.pop_back();
                std::size_t lead = 0;
                while (lead < h.size() && (h[lead] == ' ' || h[lead] == '\t')) ++lead;
                h.erase(0, lead);
            }
            have_header = true;
        } else {
            table.rows.push_back(std::move(current));
            table.record_numbers.push_back(record_start);
        }
        current.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started) {
                    in_quotes = true;
                    field_started = true;
                } else {
                    field.push_back(c);
                }
                break;
            case ',':
                current.push_back(std::move(field));
                field.clear();
                field_started = false;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') break;
                [[fallthrough]];
            case '\n':
                finish_record();
                ++line;
                record_start = line;
                break;
            default:
                field.push_back(c);
                field_started = true;
                break;
        }
    }
    if (in_quotes) {
        raise(ErrorCode::MalformedValue,
              "unterminated quoted field starting in record " + std::to_string(record_start));
    }
    if (field_started || !field.empty() || !current.empty()) finish_record();
    return table;
}

Table read_file(const std::filesystem::path& path) {
    return parse(io::read_text(path));
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_row(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.push_back(',');
        out += escape(row[i]);
    }
    return out;
}

void Writer::row(const Row& fields) {
    out_ += format_row(fields);
    out_.push_back('\n');
}

}  // namespace crimenews::csv
