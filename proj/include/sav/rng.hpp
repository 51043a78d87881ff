#pragma once

#include <cstdint>

#include "sav/rational.hpp"

namespace sav {

// Counter-based per-point randomness: a point's bit is a pure function of
// (seed, salt, coordinates), so the same lattice point sees the same coin at
// every scale and in every rerun, with no stored streams.
namespace rng {

inline uint64_t mix(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t combine(uint64_t h, uint64_t w) {
    return mix(h ^ (w + 0x2545f4914f6cdd1dULL + (h << 6) + (h >> 2)));
}

inline uint64_t hash2(uint64_t seed, uint64_t salt, int64_t x, int64_t y) {
    uint64_t h = mix(seed ^ 0x853c49e6748fea9bULL);
    h = combine(h, salt);
    h = combine(h, (uint64_t)x);
    h = combine(h, (uint64_t)y);
    return h;
}

inline uint64_t hashn(uint64_t seed, uint64_t salt, const int64_t* c, int n) {
    uint64_t h = mix(seed ^ 0x853c49e6748fea9bULL);
    h = combine(h, salt);
    for (int i = 0; i < n; ++i) h = combine(h, (uint64_t)c[i]);
    return h;
}

// u in [0,1) with 64-bit resolution.
inline double to_unit(uint64_t h) { return (double)(h >> 11) * 0x1.0p-53; }

}  // namespace rng

// A Bernoulli probability quantized to k/2^32, realized exactly by comparing a
// 64-bit counter hash against k<<32. The quantized value is the probability the
// sampler actually delivers, so exact-arithmetic identities downstream hold.
struct DyadicProb {
    uint64_t num32 = 0;  // k, probability = k / 2^32

    static DyadicProb quantize(double p) {
        if (p >= 1.0) return {1ULL << 32};
        if (p <= 0.0) return {0};
        uint64_t k = (uint64_t)(p * 4294967296.0 + 0.5);
        if (k > (1ULL << 32)) k = 1ULL << 32;
        return {k};
    }
    bool hit(uint64_t h) const { return h < (num32 << 32 | 0ULL) || num32 == (1ULL << 32); }
    Rat value() const { return Rat(Int((unsigned long)num32)) / pow2q(32); }
    bool zero() const { return num32 == 0; }
};

}  // namespace sav
