#ifndef RANDCX_CSV_HPP
#define RANDCX_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

#include "randcx/error.hpp"

namespace randcx {

/// Quotes a field when it contains a comma, quote, CR or LF; inner quotes
/// are doubled.
inline std::string csv_escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_line(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) {
            out += ',';
        }
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

/// Parses CSV text with quoted fields. Accepts LF or CRLF record ends and a
/// missing final newline. ParseError on an unterminated quote or stray
/// characters after a closing quote.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view text)
{
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    std::size_t i = 0;
    std::size_t line = 1;
    bool pending = false; // a record has started
    while (i < text.size()) {
        char c = text[i];
        if (c == '"' && field.empty()) {
            ++i;
            while (true) {
                if (i >= text.size()) {
                    fail(ErrorKind::parse_error, "line " + std::to_string(line) + ": unterminated quoted field");
                }
                if (text[i] == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                if (text[i] == '\n') {
                    ++line;
                }
                field += text[i++];
            }
            if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                fail(ErrorKind::parse_error, "line " + std::to_string(line) + ": text after closing quote");
            }
            pending = true;
            continue;
        }
        if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
            pending = true;
            ++i;
            continue;
        }
        if (c == '\r' || c == '\n') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            ++i;
            ++line;
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            pending = false;
            continue;
        }
        field += c;
        pending = true;
        ++i;
    }
    if (pending) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace randcx

#endif
