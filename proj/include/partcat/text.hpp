#pragma once

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "partcat/partition.hpp"

namespace partcat {

namespace detail {

inline bool is_label_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Cursor {
    std::string_view s;
    std::size_t pos = 0;
    std::size_t base = 0;  // offset of s inside the caller's text, for error positions

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool at_end() const { return pos >= s.size(); }
    char peek() const { return at_end() ? '\0' : s[pos]; }
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(base + pos, what); }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos;
    }
};

inline std::string block_name(int index, bool singleton) {
    static const char* plain = "abcdefghijklmnopqrstuvw";
    static const char* single = "xyz";
    int per = singleton ? 3 : 23;
    std::string s(1, (singleton ? single : plain)[index % per]);
    if (index / per > 0) s += std::to_string(index / per);
    return s;
}

inline const char* color_suffix(Color c) {
    switch (c) {
        case Color::line: return "";
        case Color::extra: return ":t";
        case Color::white: return ":w";
        case Color::black: return ":b";
    }
    return "";
}

// Parses one partition starting at the cursor; leaves the cursor after ')'.
inline Partition parse_partition_at(Cursor& cur) {
    cur.expect('P');
    if (cur.peek() != '(') cur.fail("expected '(' right after 'P'");
    ++cur.pos;
    Word upper, lower;
    std::vector<int> labels;
    std::map<std::string, int, std::less<>> ids;
    bool in_lower = false;
    for (;;) {
        cur.skip_ws();
        char c = cur.peek();
        if (c == ';') {
            if (in_lower) cur.fail("second ';'");
            in_lower = true;
            ++cur.pos;
            continue;
        }
        if (c == ')') {
            if (!in_lower) cur.fail("missing ';'");
            ++cur.pos;
            break;
        }
        if (!is_label_char(c)) cur.fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
        std::size_t start = cur.pos;
        while (!cur.at_end() && is_label_char(cur.peek())) ++cur.pos;
        std::string name(cur.s.substr(start, cur.pos - start));
        Color color = Color::line;
        if (cur.peek() == ':') {
            ++cur.pos;
            char cc = cur.peek();
            if (cc == 't') color = Color::extra;
            else if (cc == 'w') color = Color::white;
            else if (cc == 'b') color = Color::black;
            else cur.fail("expected color t, w or b");
            ++cur.pos;
            if (is_label_char(cur.peek())) cur.fail("color must be a single letter");
        }
        auto [it, fresh] = ids.emplace(name, static_cast<int>(ids.size()));
        labels.push_back(it->second);
        (in_lower ? lower : upper).push_back(color);
    }
    // Labels were assigned in token order, which is reading order.
    return Partition(upper, lower, labels);
}

}  // namespace detail

inline Partition parse_partition(std::string_view text) {
    detail::Cursor cur{text};
    Partition p = detail::parse_partition_at(cur);
    cur.skip_ws();
    if (!cur.at_end()) cur.fail("trailing characters");
    return p;
}

// Non-singleton blocks are named a, b, c, ... and singletons x, y, z, ...,
// each in order of first occurrence.
inline std::string to_string(const Partition& p) {
    auto sizes = p.block_sizes();
    std::vector<std::string> names(sizes.size());
    int multi = 0, single = 0;
    for (std::size_t b = 0; b < sizes.size(); ++b)
        names[b] = sizes[b] == 1 ? detail::block_name(single++, true) : detail::block_name(multi++, false);
    std::string s = "P(";
    for (std::size_t i = 0; i < p.upper_count(); ++i) {
        if (i) s += ' ';
        s += names[p.label(i)];
        s += detail::color_suffix(p.color(i));
    }
    if (p.upper_count()) s += ' ';
    s += ';';
    for (std::size_t i = p.upper_count(); i < p.size(); ++i) {
        s += ' ';
        s += names[p.label(i)];
        s += detail::color_suffix(p.color(i));
    }
    s += ')';
    return s;
}

}  // namespace partcat
