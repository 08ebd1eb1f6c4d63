#include "levyswarm/manifest.hpp"

#include <fstream>

#include "json.hpp"
#include "levyswarm/config.hpp"
#include "levyswarm/errors.hpp"

namespace levyswarm {

struct Manifest::Impl {
    nlohmann::json doc = nlohmann::json::object();

    nlohmann::json* slot(const std::string& key) {
        nlohmann::json* node = &doc;
        std::size_t start = 0;
        for (std::size_t dot = key.find('.'); dot != std::string::npos;
             dot = key.find('.', start)) {
            const std::string part = key.substr(start, dot - start);
            if (part.empty()) throw ValidationError("empty segment in manifest key '" + key + "'");
            node = &(*node)[part];
            start = dot + 1;
        }
        const std::string leaf = key.substr(start);
        if (leaf.empty()) throw ValidationError("empty segment in manifest key '" + key + "'");
        return &(*node)[leaf];
    }
};

Manifest::Manifest() : impl_(new Impl) {}
Manifest::~Manifest() = default;
Manifest::Manifest(Manifest&&) noexcept = default;
Manifest& Manifest::operator=(Manifest&&) noexcept = default;

void Manifest::set_bool(const std::string& key, bool v) { *impl_->slot(key) = v; }
void Manifest::set_int(const std::string& key, long long v) { *impl_->slot(key) = v; }
void Manifest::set_double(const std::string& key, double v) { *impl_->slot(key) = v; }
void Manifest::set_string(const std::string& key, const std::string& v) {
    *impl_->slot(key) = v;
}
void Manifest::set_doubles(const std::string& key, const std::vector<double>& v) {
    *impl_->slot(key) = v;
}
void Manifest::set_strings(const std::string& key, const std::vector<std::string>& v) {
    *impl_->slot(key) = v;
}

void Manifest::set_config(const std::string& key, const Config& config) {
    for (const auto& [entry_key, value] : config.entries()) {
        const std::string full = key + "." + entry_key;
        switch (value.index()) {
            case 0: set_bool(full, std::get<bool>(value)); break;
            case 1: set_int(full, std::get<long long>(value)); break;
            case 2: set_double(full, std::get<double>(value)); break;
            case 3: set_string(full, std::get<std::string>(value)); break;
            case 4: set_doubles(full, std::get<std::vector<double>>(value)); break;
            default: set_strings(full, std::get<std::vector<std::string>>(value)); break;
        }
    }
    set_string(key + "_hash", config.content_hash());
}

std::string Manifest::to_json() const { return impl_->doc.dump(2) + "\n"; }

void Manifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    out << to_json();
    if (!out) throw SolverError("write failed on '" + path + "'");
}

}  // namespace levyswarm
