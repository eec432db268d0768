#pragma once

#include <cstdint>
#include <random>

namespace bnpre {

// Deterministic seeded RNG. All draws go through our own bounded/double
// conversions, not std distributions, so sequences are identical across
// platforms and standard library implementations.
class SeededRng {
public:
    explicit SeededRng(uint64_t seed) : seed_(seed), engine_(seed) {}

    uint64_t seed() const { return seed_; }

    uint64_t next_u64() { return engine_(); }

    // uniform in [0, bound), bound >= 1
    uint64_t uniform_u64(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // uniform in [lo, hi] inclusive
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(uniform_u64(static_cast<uint64_t>(hi - lo) + 1));
    }

    // uniform in [0, 1) with 53 bits
    double uniform_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    int bernoulli(double p_true) { return uniform_double() < p_true ? 1 : 0; }

    int random_bit() { return static_cast<int>(next_u64() & 1u); }

    // Independent stream for worker `index`, reproducible from (seed, index).
    SeededRng derive(uint64_t index) const {
        return SeededRng(splitmix64(seed_ ^ (0x9E3779B97F4A7C15ULL * (index + 1))));
    }

    static uint64_t splitmix64(uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace bnpre
