#pragma once

// Line-oriented "key = value" configuration files.
//
//   # comment
//   bc   = disclination
//   grid = 64,64,64
//   eps  = 0.2,0.1,0.05
//
// Keys are unique; unknown keys are rejected by the consumer via
// require_known(). Parse errors carry 1-based line numbers.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ldg {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class ConfigFile {
  public:
    static ConfigFile parse_stream(std::istream& is, const std::string& name = "<stream>") {
        ConfigFile cfg;
        cfg.name_ = name;
        std::string line;
        int lineno = 0;
        while (std::getline(is, line)) {
            ++lineno;
            std::string s = strip(line);
            if (s.empty() || s[0] == '#') continue;
            auto eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError(where(name, lineno) + "expected 'key = value'");
            std::string key = strip(s.substr(0, eq));
            std::string value = strip(s.substr(eq + 1));
            if (key.empty()) throw ConfigError(where(name, lineno) + "empty key");
            if (cfg.entries_.count(key))
                throw ConfigError(where(name, lineno) + "duplicate key '" + key + "'");
            cfg.entries_[key] = {value, lineno};
        }
        return cfg;
    }

    static ConfigFile parse_file(const std::string& path) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config file: " + path);
        return parse_stream(is, path);
    }

    static ConfigFile parse_string(const std::string& text,
                                   const std::string& name = "<string>") {
        std::istringstream is(text);
        return parse_stream(is, name);
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const std::string& get_string(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(name_ + ": missing required key '" + key + "'");
        return it->second.value;
    }

    std::string get_string_or(const std::string& key, const std::string& fallback) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? fallback : it->second.value;
    }

    double get_real(const std::string& key) const {
        return parse_real(get_string(key), key, line_of(key));
    }

    double get_real_or(const std::string& key, double fallback) const {
        return has(key) ? get_real(key) : fallback;
    }

    long get_int(const std::string& key) const {
        return parse_int(get_string(key), key, line_of(key));
    }

    long get_int_or(const std::string& key, long fallback) const {
        return has(key) ? get_int(key) : fallback;
    }

    std::vector<double> get_reals(const std::string& key) const {
        std::vector<double> out;
        for (const std::string& tok : split_commas(get_string(key), key, line_of(key)))
            out.push_back(parse_real(tok, key, line_of(key)));
        return out;
    }

    std::vector<long> get_ints(const std::string& key) const {
        std::vector<long> out;
        for (const std::string& tok : split_commas(get_string(key), key, line_of(key)))
            out.push_back(parse_int(tok, key, line_of(key)));
        return out;
    }

    // Rejects any key outside `allowed`, reporting its line number.
    void require_known(const std::set<std::string>& allowed) const {
        for (const auto& [key, ent] : entries_)
            if (!allowed.count(key))
                throw ConfigError(where(name_, ent.line) + "unknown key '" + key + "'");
    }

    // Canonical text: sorted "key = value" lines (used for manifest hashing).
    std::string canonical() const {
        std::ostringstream os;
        for (const auto& [key, ent] : entries_) os << key << " = " << ent.value << "\n";
        return os.str();
    }

    const std::string& name() const { return name_; }

  private:
    struct Entry {
        std::string value;
        int line = 0;
    };

    static std::string where(const std::string& name, int line) {
        return name + ":" + std::to_string(line) + ": ";
    }

    static std::string strip(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::vector<std::string> split_commas(const std::string& s, const std::string& key,
                                          int line) const {
        std::vector<std::string> out;
        std::string cur;
        std::istringstream is(s);
        while (std::getline(is, cur, ',')) {
            cur = strip(cur);
            if (cur.empty())
                throw ConfigError(where(name_, line) + "empty element in list '" + key + "'");
            out.push_back(cur);
        }
        if (out.empty())
            throw ConfigError(where(name_, line) + "empty list for key '" + key + "'");
        return out;
    }

    double parse_real(const std::string& s, const std::string& key, int line) const {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != s.size())
            throw ConfigError(where(name_, line) + "key '" + key + "': not a number: '" + s +
                              "'");
        return v;
    }

    long parse_int(const std::string& s, const std::string& key, int line) const {
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != s.size())
            throw ConfigError(where(name_, line) + "key '" + key + "': not an integer: '" + s +
                              "'");
        return v;
    }

    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    std::string name_;
    std::map<std::string, Entry> entries_;
};

// FNV-1a 64-bit hash of a string, hex-encoded; used for config/calibration
// manifests.
inline std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace ldg
