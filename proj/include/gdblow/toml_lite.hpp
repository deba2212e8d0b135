#ifndef GDBLOW_TOML_LITE_HPP
#define GDBLOW_TOML_LITE_HPP

#include <map>
#include <string>
#include <vector>

#include "gdblow/errors.hpp"

namespace gdblow::toml {

// The subset of TOML the scenario files use: top-level and one-level
// [section] tables, `key = value` pairs with string, number, boolean and
// flat numeric-array values, and # comments. Keys are addressed as
// "section.key" ("key" at top level).
struct Value {
    enum class Kind { string, number, boolean, array } kind = Kind::string;
    std::string str;
    double num = 0.0;
    bool b = false;
    std::vector<double> arr;
};

class Table {
  public:
    bool contains(const std::string& key) const { return values_.count(key) != 0; }

    const Value& at(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<double> get_array(const std::string& key, std::vector<double> fallback) const;

    void set(const std::string& key, Value v) { values_[key] = std::move(v); }
    const std::map<std::string, Value>& entries() const { return values_; }

  private:
    std::map<std::string, Value> values_;
};

// Throws ConfigError with a line number on malformed input.
Table parse(const std::string& text);
Table parse_file(const std::string& path);

}  // namespace gdblow::toml

#endif  // GDBLOW_TOML_LITE_HPP
