// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace scfec {

// Usage errors (bad arguments, malformed configs). Decode failures are
// ordinary return values, never exceptions.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Always-on internal consistency check, independent of NDEBUG.
inline void check(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("scfec invariant violated: ") + what);
}

inline uint64_t splitmix64(uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic seed derivation: the per-stream seed depends only on
// (base seed, SNR index, stream index), never on scheduling.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b) {
    uint64_t s = base ^ 0x5cfec0de5cfec0deull;
    uint64_t h = splitmix64(s);
    s = h ^ (a * 0x9e3779b97f4a7c15ull);
    h = splitmix64(s);
    s = h ^ (b * 0xc2b2ae3d27d4eb4full);
    return splitmix64(s);
}

// Standard-normal sampler over mt19937_64 with an explicit Box-Muller
// implementation so noise sequences do not depend on the C++ library's
// std::normal_distribution internals.
class NormalSampler {
  public:
    explicit NormalSampler(uint64_t seed) : eng_(seed) {}

    double uniform01() {  // in (0, 1]
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// FNV-1a, used to fingerprint delivered bit streams.
struct Fnv64 {
    uint64_t h = 1469598103934665603ull;
    void update(uint8_t byte) {
        h ^= byte;
        h *= 1099511628211ull;
    }
    void update_u64(uint64_t v) {
        for (int i = 0; i < 8; ++i) update(static_cast<uint8_t>(v >> (8 * i)));
    }
};

}  // namespace scfec
