#include "ecoscope/manifest.hpp"

#include <cctype>

namespace ecoscope {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::size_t skip_space_and_comments(const std::string& s, std::size_t i) {
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (c == '\\' && i + 1 < s.size() && s[i + 1] == '\n') {
            i += 2;
        } else {
            break;
        }
    }
    return i;
}

// Parses a python string literal at i; returns position past it, or npos.
std::size_t parse_string_literal(const std::string& s, std::size_t i, std::string& out) {
    // optional prefix (r, u, b, rb ...)
    std::size_t start = i;
    while (i < s.size() && is_ident_char(s[i]) &&
           std::string("rRuUbBfF").find(s[i]) != std::string::npos && i - start < 2)
        ++i;
    if (i >= s.size() || (s[i] != '\'' && s[i] != '"')) return std::string::npos;
    char quote = s[i];
    ++i;
    out.clear();
    while (i < s.size()) {
        char c = s[i];
        if (c == '\\' && i + 1 < s.size()) {
            out.push_back(s[i + 1]);
            i += 2;
            continue;
        }
        if (c == quote) return i + 1;
        out.push_back(c);
        ++i;
    }
    return std::string::npos; // unterminated
}

// Skips one non-literal element; stops at ',' or the closing bracket at depth 0.
std::size_t skip_element(const std::string& s, std::size_t i, char close) {
    int depth = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '\'' || c == '"') {
            std::string ignored;
            std::size_t next = parse_string_literal(s, i, ignored);
            if (next == std::string::npos) return s.size();
            i = next;
            continue;
        }
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') {
            if (depth == 0 && c == close) return i;
            --depth;
        }
        if (c == ',' && depth == 0) return i;
        ++i;
    }
    return i;
}

} // namespace

std::string strip_requirement(const std::string& requirement) {
    std::size_t begin = 0;
    while (begin < requirement.size() &&
           std::isspace(static_cast<unsigned char>(requirement[begin])))
        ++begin;
    std::size_t end = begin;
    while (end < requirement.size()) {
        char c = requirement[end];
        bool name_char = std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
                         c == '_' || c == '.';
        if (!name_char) break;
        ++end;
    }
    return requirement.substr(begin, end - begin);
}

DependencyExtraction extract_pypi_dependencies(const std::string& manifest_text) {
    DependencyExtraction result;
    const std::string key = "install_requires";
    std::size_t pos = 0;
    std::size_t found = std::string::npos;
    while ((pos = manifest_text.find(key, pos)) != std::string::npos) {
        bool left_ok = pos == 0 || !is_ident_char(manifest_text[pos - 1]);
        std::size_t after = pos + key.size();
        bool right_ok = after >= manifest_text.size() || !is_ident_char(manifest_text[after]);
        if (left_ok && right_ok) {
            found = pos;
            break;
        }
        pos = after;
    }
    if (found == std::string::npos) return result; // absent: empty, Complete

    std::size_t i = skip_space_and_comments(manifest_text, found + key.size());
    if (i >= manifest_text.size() || manifest_text[i] != '=' ||
        (i + 1 < manifest_text.size() && manifest_text[i + 1] == '=')) {
        result.parse_status = ParseStatus::PartialDynamic;
        return result;
    }
    i = skip_space_and_comments(manifest_text, i + 1);
    if (i >= manifest_text.size() ||
        (manifest_text[i] != '[' && manifest_text[i] != '(')) {
        // not a literal sequence (function call, variable, comprehension source)
        result.parse_status = ParseStatus::PartialDynamic;
        return result;
    }
    char close = manifest_text[i] == '[' ? ']' : ')';
    i = skip_space_and_comments(manifest_text, i + 1);
    while (i < manifest_text.size() && manifest_text[i] != close) {
        std::string literal;
        std::size_t next = parse_string_literal(manifest_text, i, literal);
        if (next == std::string::npos) {
            result.parse_status = ParseStatus::PartialDynamic;
            next = skip_element(manifest_text, i, close);
        } else {
            std::string name = strip_requirement(literal);
            if (!name.empty()) result.declared.push_back(name);
        }
        i = skip_space_and_comments(manifest_text, next);
        if (i < manifest_text.size() && manifest_text[i] == ',')
            i = skip_space_and_comments(manifest_text, i + 1);
        else
            break;
    }
    if (i >= manifest_text.size() || manifest_text[i] != close)
        result.parse_status = ParseStatus::PartialDynamic;
    return result;
}

} // namespace ecoscope
