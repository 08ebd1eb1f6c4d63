#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace levyswarm {

using ConfigValue = std::variant<bool, long long, double, std::string,
                                 std::vector<double>, std::vector<std::string>>;

// Sectioned key = value run configuration (TOML syntax subset: [section]
// headers, scalars, quoted strings, one-line arrays, # comments).  Entries are
// addressed flat as "section.key"; top-level keys have no dot.  Command-line
// overrides land through set(), and canonical() regenerates a normalized copy
// of the merged result so a run can be reproduced from its manifest alone.
class Config {
  public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    // Missing keys fall back; present keys of the wrong type throw.
    bool get_bool(const std::string& key, bool fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    double get_double(const std::string& key, double fallback) const;  // ints accepted
    std::string get_string(const std::string& key, const std::string& fallback) const;
    std::vector<double> get_doubles(const std::string& key,
                                    const std::vector<double>& fallback) const;
    std::vector<std::string> get_strings(const std::string& key,
                                         const std::vector<std::string>& fallback) const;

    void set(const std::string& key, ConfigValue value);

    // Sections and keys sorted, values re-serialized; equal configs give
    // byte-equal text.
    std::string canonical() const;
    std::string content_hash() const;  // FNV-1a 64 over canonical(), hex

    const std::map<std::string, ConfigValue>& entries() const { return kv_; }

  private:
    std::map<std::string, ConfigValue> kv_;
};

std::string format_config_value(const ConfigValue& value);

}  // namespace levyswarm
