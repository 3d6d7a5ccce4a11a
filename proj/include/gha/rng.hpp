#pragma once

#include <cstdint>

namespace gha {

/* splitmix64: deterministic across platforms, unlike the distribution
   adapters in <random>. Used wherever reproducible sampling matters. */
struct SplitMix {
    uint64_t s;
    explicit SplitMix(uint64_t seed) : s(seed) {}
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    long centered(long b) { return (long)below(2 * (uint64_t)b + 1) - b; }
};

} // namespace gha
