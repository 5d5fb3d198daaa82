#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fel::config {

// Flat `key = value` configuration with `#` comments. Keys are grouped by
// dotted prefixes (beam., selfenergy., ...); unknown keys are rejected at
// validation time so typos fail loudly instead of being ignored.
class RunConfig {
  public:
    RunConfig() = default;

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    // Required accessors throw config_error naming the key when missing or
    // malformed; the *_or variants substitute a default when absent.
    std::string get_string(const std::string& key) const;
    double get_double(const std::string& key) const;
    long get_int(const std::string& key) const;
    std::uint64_t get_u64(const std::string& key) const;
    bool get_bool(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& dflt) const;
    double get_double_or(const std::string& key, double dflt) const;
    long get_int_or(const std::string& key, long dflt) const;
    std::uint64_t get_u64_or(const std::string& key, std::uint64_t dflt) const;
    bool get_bool_or(const std::string& key, bool dflt) const;

    // Comma-separated list of numbers (used by sweep.vary.* keys).
    std::vector<double> get_double_list(const std::string& key) const;

    // Throws config_error naming the first key not in `allowed` and not
    // matching any prefix in `allowed_prefixes` (prefix match on "pfx.").
    void require_known(const std::vector<std::string>& allowed,
                       const std::vector<std::string>& allowed_prefixes = {}) const;

    const std::map<std::string, std::string>& items() const { return kv_; }

    // FNV-1a over the sorted canonical "key=value\n" lines; stamped into every
    // output file header so runs are traceable to their exact configuration.
    std::uint64_t hash() const;

  private:
    std::map<std::string, std::string> kv_;
};

}  // namespace fel::config
