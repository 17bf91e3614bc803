#pragma once

#include "fredkin/paths.hpp"

#include <cstdint>
#include <random>

namespace fredkin {

/// mt19937_64 plus hand-rolled bounded draws. The standard distributions
/// are implementation-defined, so all sampling goes through these helpers
/// to keep outputs byte-identical for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampling.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return (next_u64() >> 11) * 0x1.0p-53; }

    /// Worker stream i derived from the master seed by fixed striding.
    static std::uint64_t worker_seed(std::uint64_t master, std::uint64_t worker) {
        return master + 0x9e3779b97f4a7c15ULL * (worker + 1);
    }

  private:
    std::mt19937_64 gen_;
};

/// Exactly uniform sample from the s^n * C_n colored Dyck words of
/// length 2n: cycle-lemma rotation of a random balanced +-1 word, then
/// independent uniform colors per matched pair.
PathWord sample_dyck_uniform(int n, int s, Rng& rng);

inline PathWord sample_dyck_uniform(int n, int s, std::uint64_t seed) {
    Rng rng(seed);
    return sample_dyck_uniform(n, s, rng);
}

} // namespace fredkin
