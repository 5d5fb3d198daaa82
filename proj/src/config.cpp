#include "fel/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fel/errors.hpp"

namespace fel::config {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

RunConfig RunConfig::parse_string(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected 'key = value', got: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key");
        if (cfg.kv_.count(key))
            throw config_error("duplicate config key: " + key);
        cfg.kv_[key] = value;
    }
    return cfg;
}

bool RunConfig::has(const std::string& key) const { return kv_.count(key) != 0; }

void RunConfig::set(const std::string& key, const std::string& value) { kv_[key] = value; }

std::string RunConfig::get_string(const std::string& key) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) throw config_error("missing required config key: " + key);
    return it->second;
}

double RunConfig::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(v.c_str(), &end);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw config_error("config key " + key + ": not a number: " + v);
    return x;
}

long RunConfig::get_int(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    errno = 0;
    const long x = std::strtol(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0')
        throw config_error("config key " + key + ": not an integer: " + v);
    return x;
}

std::uint64_t RunConfig::get_u64(const std::string& key) const {
    const std::string v = get_string(key);
    char* end = nullptr;
    errno = 0;
    const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
    if (errno != 0 || end == v.c_str() || *end != '\0' || v.find('-') != std::string::npos)
        throw config_error("config key " + key + ": not an unsigned integer: " + v);
    return static_cast<std::uint64_t>(x);
}

bool RunConfig::get_bool(const std::string& key) const {
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config key " + key + ": not a boolean: " + v);
}

std::string RunConfig::get_string_or(const std::string& key, const std::string& dflt) const {
    return has(key) ? get_string(key) : dflt;
}
double RunConfig::get_double_or(const std::string& key, double dflt) const {
    return has(key) ? get_double(key) : dflt;
}
long RunConfig::get_int_or(const std::string& key, long dflt) const {
    return has(key) ? get_int(key) : dflt;
}
std::uint64_t RunConfig::get_u64_or(const std::string& key, std::uint64_t dflt) const {
    return has(key) ? get_u64(key) : dflt;
}
bool RunConfig::get_bool_or(const std::string& key, bool dflt) const {
    return has(key) ? get_bool(key) : dflt;
}

std::vector<double> RunConfig::get_double_list(const std::string& key) const {
    const std::string v = get_string(key);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw config_error("config key " + key + ": empty list element");
        char* end = nullptr;
        errno = 0;
        const double x = std::strtod(item.c_str(), &end);
        if (errno != 0 || end == item.c_str() || *end != '\0')
            throw config_error("config key " + key + ": not a number: " + item);
        out.push_back(x);
    }
    if (out.empty()) throw config_error("config key " + key + ": empty list");
    return out;
}

void RunConfig::require_known(const std::vector<std::string>& allowed,
                              const std::vector<std::string>& allowed_prefixes) const {
    for (const auto& [key, value] : kv_) {
        bool ok = false;
        for (const auto& a : allowed)
            if (key == a) { ok = true; break; }
        if (!ok)
            for (const auto& p : allowed_prefixes)
                if (key.rfind(p, 0) == 0 && key.size() > p.size()) { ok = true; break; }
        if (!ok) throw config_error("unknown config key: " + key);
    }
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
    };
    for (const auto& [key, value] : kv_) {  // std::map iterates in sorted order
        mix(key);
        mix("=");
        mix(value);
        mix("\n");
    }
    return h;
}

}  // namespace fel::config
