#pragma once

#include <cstdint>
#include <random>

namespace bunchlab {

/// One splitmix64 round; advances the state and returns a mixed 64-bit word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded uniform random stream. Doubles take the top 53 bits of each
// mt19937_64 word, so sequences are identical across platforms for a
// given seed. Parallel work derives one independent stream per work
// unit via derive(master_seed, stream_index).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t state = master_seed + stream_index * 0x9e3779b97f4a7c15ULL;
        return splitmix64(state);
    }

    static RandomStream derive(std::uint64_t master_seed, std::uint64_t stream_index) {
        return RandomStream(derive_seed(master_seed, stream_index));
    }

    /// Uniform draw from [0, 1).
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform draw from [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::uint64_t next_word() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace bunchlab
