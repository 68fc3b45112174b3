#ifndef RANDCX_SC2_IO_HPP
#define RANDCX_SC2_IO_HPP

// SC2 text format:
//
//   sc2 <n> <full|listed>
//   e <a> <b>          (listed mode only, a < b)
//   f <a> <b> <c>      (a < b < c)
//
// Edge lines precede face lines, tokens are separated by single spaces and
// every line ends with '\n'.

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "randcx/complex.hpp"

namespace randcx {

inline std::string write_sc2(const Complex2& x)
{
    std::string out = "sc2 " + std::to_string(x.n()) + (x.full() ? " full\n" : " listed\n");
    if (!x.full()) {
        for (const auto& e : x.edges()) {
            out += "e " + std::to_string(e.a) + " " + std::to_string(e.b) + "\n";
        }
    }
    for (const auto& f : x.faces()) {
        out += "f " + std::to_string(f.a) + " " + std::to_string(f.b) + " " + std::to_string(f.c) + "\n";
    }
    return out;
}

namespace detail {

[[noreturn]] inline void sc2_error(std::size_t line, const std::string& why)
{
    fail(ErrorKind::parse_error, "sc2 line " + std::to_string(line) + ": " + why);
}

inline std::vector<std::string_view> split_spaces(std::string_view line, std::size_t line_no)
{
    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(' ', start);
        auto token = line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start);
        if (token.empty()) {
            sc2_error(line_no, "empty token");
        }
        tokens.push_back(token);
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return tokens;
}

inline int parse_int(std::string_view token, std::size_t line_no)
{
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        sc2_error(line_no, "bad integer '" + std::string(token) + "'");
    }
    return value;
}

} // namespace detail

/// Parses SC2 text. Malformed lines raise ParseError naming the line; the
/// resulting complex is validated by build_complex.
inline Complex2 read_sc2(std::string_view text)
{
    if (text.empty()) {
        detail::sc2_error(1, "empty input");
    }
    if (text.back() != '\n') {
        detail::sc2_error(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
                          "missing final newline");
    }
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < text.size();) {
        auto pos = text.find('\n', start);
        lines.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }

    auto header = detail::split_spaces(lines[0], 1);
    if (header.size() != 3 || header[0] != "sc2") {
        detail::sc2_error(1, "expected 'sc2 <n> <full|listed>'");
    }
    int n = detail::parse_int(header[1], 1);
    bool full = false;
    if (header[2] == "full") {
        full = true;
    } else if (header[2] != "listed") {
        detail::sc2_error(1, "skeleton mode must be 'full' or 'listed'");
    }

    std::vector<Edge> edges;
    std::vector<Face> faces;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::size_t line_no = i + 1;
        auto tokens = detail::split_spaces(lines[i], line_no);
        if (tokens[0] == "e") {
            if (full) {
                detail::sc2_error(line_no, "edge lines are only allowed in listed mode");
            }
            if (!faces.empty()) {
                detail::sc2_error(line_no, "edge line after face lines");
            }
            if (tokens.size() != 3) {
                detail::sc2_error(line_no, "edge line needs two vertices");
            }
            int a = detail::parse_int(tokens[1], line_no);
            int b = detail::parse_int(tokens[2], line_no);
            if (!(a < b)) {
                detail::sc2_error(line_no, "edge vertices must be increasing");
            }
            edges.push_back({a, b});
        } else if (tokens[0] == "f") {
            if (tokens.size() != 4) {
                detail::sc2_error(line_no, "face line needs three vertices");
            }
            int a = detail::parse_int(tokens[1], line_no);
            int b = detail::parse_int(tokens[2], line_no);
            int c = detail::parse_int(tokens[3], line_no);
            if (!(a < b && b < c)) {
                detail::sc2_error(line_no, "face vertices must be increasing");
            }
            faces.push_back({a, b, c});
        } else {
            detail::sc2_error(line_no, "unknown record '" + std::string(tokens[0]) + "'");
        }
    }
    if (full) {
        return build_complex(n, full_skeleton, std::move(faces));
    }
    return build_complex(n, std::move(edges), std::move(faces));
}

inline Complex2 load_sc2(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::parse_error, "cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return read_sc2(buffer.str());
}

inline void save_sc2(const Complex2& x, const std::string& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        fail(ErrorKind::parse_error, "cannot write " + path);
    }
    out << write_sc2(x);
}

} // namespace randcx

#endif
