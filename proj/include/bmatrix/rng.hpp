// Seeded randomness with platform-stable output. std::mt19937_64 has a
// standardized sequence, but the standard distributions do not, so the
// bounded/unit mappings are spelled out here. Seed derivation for
// independent substreams (per trial, per memory) goes through splitmix64.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bmatrix/core.hpp"

namespace bmx {

/// One splitmix64 step. Advances the state and returns the mixed output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Deterministic substream seed for (base, salt). Two splitmix rounds so
/// that nearby salts land far apart.
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t s = base ^ (0x9E3779B97F4A7C15ULL * (salt + 1));
    splitmix64(s);
    return splitmix64(s);
}

class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    [[nodiscard]] std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound) by rejection; bound must be nonzero.
    [[nodiscard]] std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Uniform double in [0,1) with 53 random mantissa bits.
    [[nodiscard]] double unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1p-53;
    }

    [[nodiscard]] Spin spin() { return (next_u64() & 1u) ? Spin{1} : Spin{-1}; }

    /// Fisher-Yates shuffle (explicit, to keep the draw sequence pinned).
    void shuffle(std::vector<std::size_t>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace bmx
