// rng.hpp — pinned pseudorandom source so every experiment replays byte-for-byte.
//
// Generator: xoshiro256++ seeded through SplitMix64. Stream k of master seed s
// initializes SplitMix64 with s XOR ((k+1) * 0x9E3779B97F4A7C15) and draws the
// four state words from it, so (seed, stream) pairs index independent
// subsequences. Normals use the Marsaglia polar transform of uniforms (sqrt is
// IEEE-exact; log is the only libm dependency).
#pragma once

#include <cmath>
#include <cstdint>

namespace disckit {

class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t sm = seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL);
        for (auto& word : state_) word = splitmix_next(sm);
        cached_ = false;
        cache_ = 0.0;
    }

    Rng split(std::uint64_t stream) const {
        Rng out(0);
        std::uint64_t sm = state_[0] ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL);
        for (auto& word : out.state_) word = splitmix_next(sm);
        out.cached_ = false;
        return out;
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53 significant bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on (0, 1]; never zero, so log() below is always defined.
    double uniform01_open_left() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via the Marsaglia polar method; pairs are cached.
    double normal() {
        if (cached_) {
            cached_ = false;
            return cache_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform01() - 1.0;
            v = 2.0 * uniform01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        cache_ = v * f;
        cached_ = true;
        return u * f;
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    // Rademacher +/-1.
    double sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Rejection-free multiply-shift; bias < 2^-64, irrelevant at desk scale.
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    static std::uint64_t splitmix_next(std::uint64_t& s) {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4];
    bool cached_;
    double cache_;
};

// Derives the seed of stream k from a master seed; generators taking plain
// seeds get per-trial streams through this single scheme.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ ((stream + 1) * 0x9E3779B97F4A7C15ULL);
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace disckit
