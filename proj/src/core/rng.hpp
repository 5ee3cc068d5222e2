#pragma once

#include <cstdint>
#include <vector>

namespace qsvm {

// Self-contained PRNG so that sampling is bit-reproducible across standard
// library implementations. xoshiro256++ seeded through splitmix64.
inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    // Independent substream for (seed, stream); used for per-read and
    // per-batch streams so parallel and serial execution agree.
    static Rng derive(uint64_t seed, uint64_t stream) {
        uint64_t sm = seed;
        uint64_t mixed = splitmix64_next(sm) ^ (0xD1B54A32D192ED03ULL * (stream + 1));
        return Rng(mixed);
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound); bound > 0. Unbiased via rejection.
    uint64_t next_below(uint64_t bound) {
        const uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bit() { return (next_u64() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        for (size_t i = items.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(next_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    uint64_t s_[4];
};

} // namespace qsvm
