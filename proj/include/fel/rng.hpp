#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace fel {

// splitmix64 finalizer; used to derive independent substreams from
// (seed, label) pairs so ensemble results do not depend on scheduling.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + 1));
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return mix64(seed ^ h);
}

// Gaussian pairs via explicit Box-Muller on top of mt19937_64.
// std::normal_distribution is implementation-defined; this is not.
class gaussian_stream {
public:
    explicit gaussian_stream(std::uint64_t stream_seed) : eng_(stream_seed) {}

    // one standard normal pair
    void next_pair(double& gx, double& gy) {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925286766559 * u2;
        gx = rad * std::cos(ang);
        gy = rad * std::sin(ang);
    }

private:
    double uniform_open() {
        // in (0,1]; never returns 0 so log() is safe
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }
    std::mt19937_64 eng_;
};

}  // namespace fel
