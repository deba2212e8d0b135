#include "gdblow/toml_lite.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gdblow::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// removes a trailing comment that is not inside a string literal
std::string strip_comment(const std::string& s) {
    bool in_str = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') in_str = !in_str;
        if (s[i] == '#' && !in_str) return s.substr(0, i);
    }
    return s;
}

double parse_number(const std::string& tok, int line) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == nullptr || *end != '\0' || end == tok.c_str())
        fail(line, "malformed number '" + tok + "'");
    if (!std::isfinite(v)) fail(line, "non-finite number '" + tok + "'");
    return v;
}

Value parse_value(const std::string& raw, int line) {
    Value v;
    const std::string s = strip(raw);
    if (s.empty()) fail(line, "missing value");
    if (s.front() == '"') {
        if (s.size() < 2 || s.back() != '"') fail(line, "unterminated string");
        v.kind = Value::Kind::string;
        v.str = s.substr(1, s.size() - 2);
        return v;
    }
    if (s == "true" || s == "false") {
        v.kind = Value::Kind::boolean;
        v.b = (s == "true");
        return v;
    }
    if (s.front() == '[') {
        if (s.back() != ']') fail(line, "unterminated array");
        v.kind = Value::Kind::array;
        std::stringstream body(s.substr(1, s.size() - 2));
        std::string item;
        while (std::getline(body, item, ',')) {
            const std::string t = strip(item);
            if (t.empty()) continue;
            v.arr.push_back(parse_number(t, line));
        }
        return v;
    }
    v.kind = Value::Kind::number;
    v.num = parse_number(s, line);
    return v;
}

}  // namespace

const Value& Table::at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing key '" + key + "'");
    return it->second;
}

std::string Table::get_string(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != Value::Kind::string)
        throw ConfigError("key '" + key + "' must be a string");
    return it->second.str;
}

double Table::get_number(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != Value::Kind::number)
        throw ConfigError("key '" + key + "' must be a number");
    return it->second.num;
}

int Table::get_int(const std::string& key, int fallback) const {
    const double v = get_number(key, fallback);
    if (std::nearbyint(v) != v) throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<int>(v);
}

bool Table::get_bool(const std::string& key, bool fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != Value::Kind::boolean)
        throw ConfigError("key '" + key + "' must be a boolean");
    return it->second.b;
}

std::vector<double> Table::get_array(const std::string& key, std::vector<double> fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second.kind != Value::Kind::array)
        throw ConfigError("key '" + key + "' must be an array of numbers");
    return it->second.arr;
}

Table parse(const std::string& text) {
    Table out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip(strip_comment(line));
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(lineno, "unterminated section header");
            section = strip(s.substr(1, s.size() - 2));
            if (section.empty()) fail(lineno, "empty section name");
            continue;
        }
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos) fail(lineno, "expected 'key = value'");
        const std::string key = strip(s.substr(0, eq));
        if (key.empty()) fail(lineno, "empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        out.set(full, parse_value(s.substr(eq + 1), lineno));
    }
    return out;
}

Table parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace gdblow::toml
