#include "levyswarm/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "levyswarm/errors.hpp"

namespace levyswarm {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

[[noreturn]] void fail(int line_no, const std::string& what) {
    throw ValidationError("config line " + std::to_string(line_no) + ": " + what);
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
            c != '.')
            return false;
    }
    return true;
}

std::string parse_quoted(const std::string& raw, int line_no) {
    if (raw.size() < 2 || raw.back() != '"') fail(line_no, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        char c = raw[i];
        if (c == '\\') {
            if (i + 2 >= raw.size()) fail(line_no, "dangling escape");
            const char e = raw[++i];
            if (e == 'n') c = '\n';
            else if (e == 't') c = '\t';
            else if (e == '"') c = '"';
            else if (e == '\\') c = '\\';
            else fail(line_no, std::string("unknown escape \\") + e);
        } else if (c == '"') {
            fail(line_no, "unescaped quote inside string");
        }
        out += c;
    }
    return out;
}

bool try_parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    std::size_t k = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (k == s.size()) return false;
    for (std::size_t i = k; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    const char* b = s.data() + (s[0] == '+' ? 1 : 0);
    auto res = std::from_chars(b, s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

bool try_parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string> split_array(const std::string& body, int line_no) {
    std::vector<std::string> parts;
    std::string cur;
    bool in_string = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
        const char c = body[i];
        if (c == '"' && (i == 0 || body[i - 1] != '\\')) in_string = !in_string;
        if (c == ',' && !in_string) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (in_string) fail(line_no, "unterminated string in array");
    const std::string last = trim(cur);
    if (!last.empty()) parts.push_back(last);
    for (const std::string& p : parts)
        if (p.empty()) fail(line_no, "empty array element");
    return parts;
}

ConfigValue parse_value(const std::string& raw, int line_no) {
    if (raw.empty()) fail(line_no, "missing value");
    if (raw.front() == '"') return parse_quoted(raw, line_no);
    if (raw == "true") return true;
    if (raw == "false") return false;
    if (raw.front() == '[') {
        if (raw.back() != ']') fail(line_no, "array must close on the same line");
        const std::vector<std::string> parts =
            split_array(raw.substr(1, raw.size() - 2), line_no);
        if (!parts.empty() && parts.front().front() == '"') {
            std::vector<std::string> out;
            for (const std::string& p : parts) {
                if (p.front() != '"') fail(line_no, "mixed array element types");
                out.push_back(parse_quoted(p, line_no));
            }
            return out;
        }
        std::vector<double> out;
        for (const std::string& p : parts) {
            double d;
            if (!try_parse_double(p, d)) fail(line_no, "bad number '" + p + "' in array");
            out.push_back(d);
        }
        return out;
    }
    long long i;
    if (try_parse_int(raw, i)) return i;
    double d;
    if (try_parse_double(raw, d)) return d;
    fail(line_no, "cannot parse value '" + raw + "'");
}

const char* type_name(const ConfigValue& v) {
    switch (v.index()) {
        case 0: return "bool";
        case 1: return "integer";
        case 2: return "float";
        case 3: return "string";
        case 4: return "float array";
        default: return "string array";
    }
}

[[noreturn]] void wrong_type(const std::string& key, const ConfigValue& v,
                             const char* wanted) {
    throw ValidationError("config key '" + key + "' holds a " + type_name(v) +
                          ", expected " + wanted);
}

}  // namespace

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_name(section)) fail(line_no, "bad section name '" + section + "'");
            continue;
        }
        bool in_string = false;
        std::size_t eq = std::string::npos;
        for (std::size_t i = 0; i < line.size(); ++i) {
            const char c = line[i];
            if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
            if (c == '=' && !in_string) {
                eq = i;
                break;
            }
        }
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        if (!valid_name(key) || key.find('.') != std::string::npos)
            fail(line_no, "bad key name '" + key + "'");
        const std::string full = section.empty() ? key : section + "." + key;
        if (cfg.kv_.count(full)) fail(line_no, "duplicate key '" + full + "'");
        cfg.kv_[full] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return cfg;
}

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const bool* b = std::get_if<bool>(&it->second)) return *b;
    wrong_type(key, it->second, "bool");
}

long long Config::get_int(const std::string& key, long long fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const long long* i = std::get_if<long long>(&it->second)) return *i;
    wrong_type(key, it->second, "integer");
}

double Config::get_double(const std::string& key, double fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const double* d = std::get_if<double>(&it->second)) return *d;
    if (const long long* i = std::get_if<long long>(&it->second))
        return static_cast<double>(*i);
    wrong_type(key, it->second, "number");
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const std::string* s = std::get_if<std::string>(&it->second)) return *s;
    wrong_type(key, it->second, "string");
}

std::vector<double> Config::get_doubles(const std::string& key,
                                        const std::vector<double>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const auto* v = std::get_if<std::vector<double>>(&it->second)) return *v;
    wrong_type(key, it->second, "float array");
}

std::vector<std::string> Config::get_strings(
    const std::string& key, const std::vector<std::string>& fallback) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    if (const auto* v = std::get_if<std::vector<std::string>>(&it->second)) return *v;
    wrong_type(key, it->second, "string array");
}

void Config::set(const std::string& key, ConfigValue value) {
    kv_[key] = std::move(value);
}

std::string format_config_value(const ConfigValue& value) {
    auto number = [](double d) {
        char buf[40];
        auto res = std::to_chars(buf, buf + sizeof(buf), d);
        std::string s(buf, res.ptr);
        // mark floats as floats so the canonical text re-parses to same type
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
            s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
            s += ".0";
        return s;
    };
    auto quoted = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"') out += "\\\"";
            else if (c == '\\') out += "\\\\";
            else if (c == '\n') out += "\\n";
            else if (c == '\t') out += "\\t";
            else out += c;
        }
        out += '"';
        return out;
    };
    switch (value.index()) {
        case 0: return std::get<bool>(value) ? "true" : "false";
        case 1: return std::to_string(std::get<long long>(value));
        case 2: return number(std::get<double>(value));
        case 3: return quoted(std::get<std::string>(value));
        case 4: {
            std::string out = "[";
            const auto& v = std::get<std::vector<double>>(value);
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? ", " : "") + number(v[i]);
            return out + "]";
        }
        default: {
            std::string out = "[";
            const auto& v = std::get<std::vector<std::string>>(value);
            for (std::size_t i = 0; i < v.size(); ++i)
                out += (i ? ", " : "") + quoted(v[i]);
            return out + "]";
        }
    }
}

std::string Config::canonical() const {
    // std::map ordering groups "section.key" entries by section already;
    // top-level keys (no dot) sort among the sections, so emit them first
    std::string out;
    for (const auto& [key, value] : kv_) {
        if (key.find('.') != std::string::npos) continue;
        out += key + " = " + format_config_value(value) + "\n";
    }
    std::string section;
    for (const auto& [key, value] : kv_) {
        const std::size_t dot = key.find('.');
        if (dot == std::string::npos) continue;
        const std::string sec = key.substr(0, dot);
        if (sec != section) {
            section = sec;
            out += "[" + section + "]\n";
        }
        out += key.substr(dot + 1) + " = " + format_config_value(value) + "\n";
    }
    return out;
}

std::string Config::content_hash() const {
    const std::string text = canonical();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace levyswarm
