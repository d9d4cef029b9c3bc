// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace bchyp {

// splitmix64: used only to expand (seed, stream) pairs into engine seeds so
// that distinct streams are decorrelated even for adjacent stream ids.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded stream RNG.  Estimators split work into numbered streams; partial
// results are merged in stream order, so a run is reproducible for a given
// (seed, streams) pair regardless of thread scheduling.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) {
        std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x3c6ef372fe94f82bULL);
        std::seed_seq seq{splitmix64(s), splitmix64(s), splitmix64(s), splitmix64(s)};
        engine_.seed(seq);
    }

    double uniform() { return unif_(engine_); }                    // [0,1)
    double uniform(double a, double b) { return a + (b - a) * unif_(engine_); }
    double gaussian() { return gauss_(engine_); }
    std::uint64_t bits() { return engine_(); }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::uniform_real_distribution<double> unif_{0.0, 1.0};
    std::normal_distribution<double> gauss_{0.0, 1.0};
};

} // namespace bchyp
