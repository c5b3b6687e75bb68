#include "fivefield/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace fivefield {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

void Config::fail(const std::string& msg, int line) const {
    throw ConfigError(origin_ + ":" + std::to_string(line) + ": " + msg);
}

Config Config::parse_string(const std::string& text, const std::string& origin) {
    Config c;
    c.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[') {
            if (t.back() != ']') c.fail("unterminated section header", lineno);
            section = trim(t.substr(1, t.size() - 2));
            if (section.empty()) c.fail("empty section name", lineno);
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) c.fail("expected key = value", lineno);
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) c.fail("empty key", lineno);
        if (value.empty()) c.fail("empty value for key '" + key + "'", lineno);
        if (section.empty()) c.fail("key '" + key + "' outside any [section]", lineno);
        auto& sec = c.sections_[section];
        if (sec.count(key)) c.fail("duplicate key '" + key + "'", lineno);
        sec[key] = Entry{value, lineno};
    }
    return c;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), path);
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.count(key) > 0;
}

const Config::Entry& Config::lookup(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end())
        throw ConfigError(origin_ + ": missing section [" + section + "]");
    const auto k = s->second.find(key);
    if (k == s->second.end())
        throw ConfigError(origin_ + ": missing key '" + key + "' in section [" + section + "]");
    consumed_.insert(section + "." + key);
    return k->second;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const Entry& e = lookup(section, key);
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
        fail("key '" + key + "': not a number: '" + e.value + "'", e.line);
    return v;
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Config::get_int(const std::string& section, const std::string& key) const {
    const Entry& e = lookup(section, key);
    char* end = nullptr;
    const long v = std::strtol(e.value.c_str(), &end, 10);
    if (end == e.value.c_str() || *end != '\0')
        fail("key '" + key + "': not an integer: '" + e.value + "'", e.line);
    return v;
}

long Config::get_int(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    return lookup(section, key).value;
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

void Config::ensure_all_consumed() const {
    for (const auto& [sec, entries] : sections_)
        for (const auto& [key, e] : entries)
            if (!consumed_.count(sec + "." + key))
                fail("unknown key '" + key + "' in section [" + sec + "]", e.line);
}

} // namespace fivefield
