#pragma once

#include <cstdint>

namespace dskp {

// Deterministic 64-bit generator (splitmix64). We avoid <random>
// distributions on purpose: their output is implementation-defined, and
// seeded runs must produce byte-identical artifacts everywhere.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0. Modulo bias is irrelevant here (n is tiny).
    uint64_t below(uint64_t n) { return next() % n; }

    // Uniform in [lo, hi], inclusive.
    int64_t range(int64_t lo, int64_t hi) {
        return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

  private:
    uint64_t state_;
};

} // namespace dskp
