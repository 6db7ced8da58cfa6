#pragma once

#include <cstdint>
#include <cstring>
#include <random>
#include <string_view>
#include <vector>

#include "vqclab/common.hpp"

// Seeded randomness with portable transforms. std::mt19937_64 is pinned by
// the standard, but the std distributions are implementation-defined, so all
// draws (uniform doubles, gaussians, bounded ints, shuffles) are derived here
// from raw engine output. Same seed, same stream, on any platform.

namespace vqclab {

inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// One-shot mix of a seed with a salt; used to derive independent sub-seeds.
inline uint64_t mix_seed(uint64_t seed, uint64_t salt) {
    uint64_t s = seed ^ (salt + 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

// FNV-1a over a string; used to derive per-purpose and per-run-name seeds.
inline uint64_t hash_str(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t derive_seed(uint64_t master, std::string_view purpose) {
    return mix_seed(master, hash_str(purpose));
}

// FNV-1a over the bytes of a double (canonical content hashing).
inline uint64_t hash_double(uint64_t h, double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
  public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; pairs are cached.
    double gauss() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0,1] so the log is finite.
        double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * kPi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Uniform in [0,n). Modulo bias is ~n/2^64, irrelevant at our sizes.
    size_t bounded(size_t n) {
        return static_cast<size_t>(engine_() % static_cast<uint64_t>(n));
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[bounded(i)]);
        }
    }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace vqclab
