#pragma once

// Deterministic RNG plumbing. Every growth step consumes draws in a fixed
// order -- one bounded draw for the attractor, then (colored models only) one
// unit draw for the colour -- so a tree built from the same stream replays
// the same history as the network, bit for bit.

#include <cstdint>
#include <stdexcept>

namespace spnet {

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Worker streams: fold the worker index into the seed with one mix round.
    // stream(s, w) == Rng(mix64(s ^ golden * (w + 1))); workers never share a
    // stream and the derivation is stable across runs and platforms.
    static Rng stream(std::uint64_t seed, std::uint64_t worker) {
        return Rng(mix64(seed ^ (0x9e3779b97f4a7c15ull * (worker + 1))));
    }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform on {0, ..., m-1}; Lemire reduction, unbiased
    std::uint64_t below(std::uint64_t m) {
        if (m == 0) throw std::invalid_argument("below(0)");
        const std::uint64_t reject_below = threshold(m);
        while (true) {
            unsigned __int128 prod = static_cast<unsigned __int128>(next_u64()) * m;
            if (static_cast<std::uint64_t>(prod) >= reject_below)
                return static_cast<std::uint64_t>(prod >> 64);
        }
    }

    // uniform double in [0, 1), 53 bits
    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

private:
    std::uint64_t state_;
    static std::uint64_t threshold(std::uint64_t m) { return (0 - m) % m; }
};

}  // namespace spnet
