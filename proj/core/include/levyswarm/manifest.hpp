#pragma once

#include <memory>
#include <string>
#include <vector>

namespace levyswarm {

class Config;

// Run manifest: the merged effective config plus whatever the run wants to
// record (stats, output file names, coefficient values).  Dotted keys nest,
// so set_double("solver.dt", h) lands under {"solver": {"dt": h}}.  Output is
// deterministic: sorted keys, no timestamps.
class Manifest {
  public:
    Manifest();
    ~Manifest();
    Manifest(Manifest&&) noexcept;
    Manifest& operator=(Manifest&&) noexcept;

    void set_bool(const std::string& key, bool v);
    void set_int(const std::string& key, long long v);
    void set_double(const std::string& key, double v);
    void set_string(const std::string& key, const std::string& v);
    void set_doubles(const std::string& key, const std::vector<double>& v);
    void set_strings(const std::string& key, const std::vector<std::string>& v);

    // every config entry under the given key, plus its content hash
    void set_config(const std::string& key, const Config& config);

    std::string to_json() const;  // 2-space indent, trailing newline
    void write(const std::string& path) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace levyswarm
