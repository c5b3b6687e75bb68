#ifndef FIVEFIELD_CONFIG_HPP
#define FIVEFIELD_CONFIG_HPP

#include <map>
#include <set>
#include <stdexcept>
#include <string>

namespace fivefield {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Strict sectioned key = value configuration text. Lines are either
/// blank, comments (#), [section] headers, or key = value pairs.
/// Accessors record which keys were read; ensure_all_consumed() rejects
/// leftovers so typos in physics parameters cannot pass silently.
class Config {
public:
    static Config parse_string(const std::string& text, const std::string& origin = "<string>");
    static Config parse_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_int(const std::string& section, const std::string& key) const;
    long get_int(const std::string& section, const std::string& key, long fallback) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;

    /// Throws ConfigError naming the first unread key and its line.
    void ensure_all_consumed() const;

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string origin_;
    std::map<std::string, std::map<std::string, Entry>> sections_;
    mutable std::set<std::string> consumed_;

    const Entry& lookup(const std::string& section, const std::string& key) const;
    [[noreturn]] void fail(const std::string& msg, int line) const;
};

} // namespace fivefield

#endif
