#pragma once

// Sectioned key-value run configuration. The dialect is deliberately small:
//   [section]
//   key = value        # full-line comments only, '#' or ';'
// Parsed values are kept as trimmed strings; typed accessors convert on
// demand. The raw text is preserved verbatim so output files can embed the
// exact configuration they were produced from.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace rhb {

// parse/lookup failure with a 1-based line anchor (0 when not line-specific)
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                            message
                                      : message),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class Config {
  public:
    static Config parse(const std::string& text);
    static Config parse_file(const std::string& path);

    const std::string& raw() const { return raw_; }

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;

    // throws ConfigError (anchored at the section header line or 0) when
    // the key is missing or the value does not convert
    std::string get(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    int get_int(const std::string& section, const std::string& key) const;
    bool get_bool(const std::string& section, const std::string& key) const;

    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_or(const std::string& section, const std::string& key,
                  double fallback) const;
    int get_or(const std::string& section, const std::string& key,
               int fallback) const;
    bool get_or(const std::string& section, const std::string& key,
                bool fallback) const;

    // keys of one section in file order
    std::vector<std::string> keys(const std::string& section) const;

  private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    struct Section {
        std::map<std::string, Entry> entries;
        std::vector<std::string> order;
        int line = 0;
    };
    const Entry& entry(const std::string& section, const std::string& key) const;

    std::string raw_;
    std::map<std::string, Section> sections_;
};

}  // namespace rhb
