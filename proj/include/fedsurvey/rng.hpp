#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

namespace fedsurvey {

// FNV-1a, used to fold string identifiers (site ids, client ids) into stream keys.
inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic, platform-independent generator (xoshiro-free, splitmix-driven).
// All randomized operations in the project draw from this so results are
// bit-reproducible across compilers; std::uniform_*_distribution is
// implementation-defined and deliberately avoided.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased integer in [0, n) via rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Standard normal via Box-Muller (no cached spare, keeps the stream simple).
    double normal() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Fisher-Yates over an index vector.
    void shuffle(std::vector<std::size_t>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream from a master seed and any number of keys.
// stream(seed, site_id) etc. -- adding an unrelated key never perturbs other
// streams, which keeps experiments invariant to enumeration order.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t key) {
    return splitmix64(seed ^ splitmix64(key));
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t k1, std::uint64_t k2) {
    return stream_seed(stream_seed(seed, k1), k2);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
    return stream_seed(seed, fnv1a(name));
}

}  // namespace fedsurvey
