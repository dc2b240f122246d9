#include "rhb/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rhb {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    cfg.raw_ = text;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError(lineno, "unterminated section header");
            current = trim(t.substr(1, t.size() - 2));
            if (current.empty())
                throw ConfigError(lineno, "empty section name");
            auto [it, fresh] = cfg.sections_.try_emplace(current);
            if (fresh) it->second.line = lineno;
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(lineno, "expected 'key = value' or '[section]'");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) throw ConfigError(lineno, "empty key");
        if (current.empty())
            throw ConfigError(lineno, "entry before any [section] header");
        auto& sec = cfg.sections_[current];
        if (sec.entries.count(key))
            throw ConfigError(lineno, "duplicate key '" + key + "' in [" +
                                          current + "]");
        sec.entries[key] = {trim(t.substr(eq + 1)), lineno};
        sec.order.push_back(key);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(0, "cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

bool Config::has_section(const std::string& section) const {
    return sections_.count(section) != 0;
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.entries.count(key) != 0;
}

const Config::Entry& Config::entry(const std::string& section,
                                   const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end())
        throw ConfigError(0, "missing section [" + section + "]");
    const auto kt = it->second.entries.find(key);
    if (kt == it->second.entries.end())
        throw ConfigError(it->second.line, "missing key '" + key + "' in [" +
                                               section + "]");
    return kt->second;
}

std::string Config::get(const std::string& section,
                        const std::string& key) const {
    return entry(section, key).value;
}

double Config::get_double(const std::string& section,
                          const std::string& key) const {
    const auto& e = entry(section, key);
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError(e.line, "'" + key + "' is not a number: '" +
                                      e.value + "'");
    return v;
}

int Config::get_int(const std::string& section, const std::string& key) const {
    const auto& e = entry(section, key);
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
        throw ConfigError(e.line, "'" + key + "' is not an integer: '" +
                                      e.value + "'");
    return static_cast<int>(v);
}

bool Config::get_bool(const std::string& section,
                      const std::string& key) const {
    const auto& e = entry(section, key);
    if (e.value == "true" || e.value == "1") return true;
    if (e.value == "false" || e.value == "0") return false;
    throw ConfigError(e.line, "'" + key + "' is not a boolean: '" + e.value +
                                  "' (use true/false)");
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double Config::get_or(const std::string& section, const std::string& key,
                      double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_or(const std::string& section, const std::string& key,
                   int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

bool Config::get_or(const std::string& section, const std::string& key,
                    bool fallback) const {
    return has(section, key) ? get_bool(section, key) : fallback;
}

std::vector<std::string> Config::keys(const std::string& section) const {
    const auto it = sections_.find(section);
    if (it == sections_.end()) return {};
    return it->second.order;
}

}  // namespace rhb
