#pragma once

// SplitMix64 (Steele, Lea, Flood 2014). Every seeded draw in the project comes
// from this generator so that seeds are portable across implementations.
//
//   state += 0x9E3779B97F4A7C15
//   z = state
//   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
//
// split(i) seeds a child stream with mix64(state + (i + 1) * golden gamma).
// uniform() uses the top 53 bits; below(n) is next() % n.

#include <cstdint>

namespace adpbound {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kGoldenGamma;
        return mix64(state_);
    }

    /// Uniform in [0, 1).
    constexpr double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    constexpr std::uint64_t below(std::uint64_t n) { return next() % n; }

    constexpr SplitMix64 split(std::uint64_t stream) const {
        return SplitMix64(mix64(state_ + (stream + 1) * kGoldenGamma));
    }

    constexpr std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace adpbound
