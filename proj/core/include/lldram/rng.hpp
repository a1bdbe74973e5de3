#pragma once

#include <cmath>
#include <cstdint>

namespace lldram {

// Counter-based deterministic noise. Every per-cell quantity is a pure
// function of (seed, coordinate words, stream tag); nothing is stored.

constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr uint64_t hash_combine(uint64_t h, uint64_t w) {
    return splitmix64(h ^ (w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

class HashStream {
public:
    explicit HashStream(uint64_t seed) : h_(splitmix64(seed)) {}
    HashStream& mix(uint64_t w) {
        h_ = hash_combine(h_, w);
        return *this;
    }
    uint64_t value() const { return h_; }

    // Uniform in [0, 1).
    double uniform() const {
        return static_cast<double>(h_ >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller on two derived words.
    double gaussian() const {
        uint64_t a = splitmix64(h_);
        uint64_t b = splitmix64(h_ ^ 0xd1b54a32d192ed03ULL);
        double u1 = (static_cast<double>(a >> 11) + 0.5) * 0x1.0p-53;
        double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    uint64_t h_;
};

// Small deterministic PRNG for sampling tasks (trace generation, Monte
// Carlo cell picks). xorshift-style; not for the per-cell noise model.
class Prng {
public:
    explicit Prng(uint64_t seed) : s_(splitmix64(seed ^ 0x6a09e667f3bcc909ULL)) {}
    uint64_t next() {
        s_ = splitmix64(s_);
        return s_;
    }
    uint64_t next_below(uint64_t n) { return n ? next() % n : 0; }
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t s_;
};

}  // namespace lldram
