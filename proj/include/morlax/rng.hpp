#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace morlax {

// Counter-based pseudo-random stream with cheap splitting.
//
// A stream is identified by a 64-bit key; output word j is a strong mix of
// (key, j), so the stream is random-access and two streams with different
// keys are statistically independent. `split(lane)` derives a child key from
// (parent key, lane) without consuming any parent state, which lets parallel
// consumers (environment instances, rollout workers) own private streams that
// are reproducible regardless of thread count or interleaving.
class Rng {
public:
    Rng() : Rng(0) {}
    explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ kSeedTag)), ctr_(0) {}

    static Rng from_state(std::uint64_t key, std::uint64_t counter) {
        Rng r;
        r.key_ = key;
        r.ctr_ = counter;
        return r;
    }

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return ctr_; }

    // Child stream derived from (key, lane). Pure: does not advance *this,
    // and the same lane always yields the same child.
    Rng split(std::uint64_t lane) const {
        Rng child;
        child.key_ = mix64(mix64(key_ ^ kSplitTag) + mix64(lane ^ kLaneTag));
        child.ctr_ = 0;
        return child;
    }

    std::uint64_t next_u64() { return mix64(key_ + kGamma * ++ctr_); }

    // Uniform on [0, 1), 53-bit mantissa.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; safe as a log() argument.
    double next_open() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Standard normal via Box-Muller; always consumes exactly two words.
    double next_gaussian() {
        const double u1 = next_open();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    // Uniform integer in [0, n), n > 0. Fixed-point multiply keeps the
    // mapping exact and branch-free (bias < 2^-64, irrelevant here).
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t kSeedTag = 0x5851F42D4C957F2DULL;
    static constexpr std::uint64_t kSplitTag = 0xA0761D6478BD642FULL;
    static constexpr std::uint64_t kLaneTag = 0xE7037ED1A0B428DBULL;

    // Finalizer with full avalanche (splitmix64).
    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace morlax
