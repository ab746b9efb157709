// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>

#include "gmqaoa/evt.hpp"

namespace gmqaoa {

/// SplitMix64 output function (Steele, Lea & Flood 2014). Fixed published
/// algorithm so generated ensembles reproduce across platforms and languages.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Per-instance seed derivation: hash the ensemble seed, fold in the index,
/// hash again. Documented so other implementations can reproduce ensembles.
inline std::uint64_t mix_seed(std::uint64_t ensemble_seed, std::uint64_t index) {
    return splitmix64_mix(splitmix64_mix(ensemble_seed) ^ index);
}

/// Minimal seedable PRNG stream based on SplitMix64.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in the open interval (0, 1): top 53 bits, half-ulp offset.
    double uniform01() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    /// Standard normal via the inverse-CDF transform (platform independent,
    /// unlike library normal samplers).
    double gaussian() { return inv_norm_cdf(uniform01()); }

  private:
    std::uint64_t state_;
};

}  // namespace gmqaoa
