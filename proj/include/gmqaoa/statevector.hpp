// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Exact statevector simulation of the alternating circuit
//   |psi> = U_M(beta_p) U_C(gamma_p) ... U_M(beta_1) U_C(gamma_1) |uniform>.
// Both mixers are applied as exact algebraic operators, O(2^n) per layer:
// the Grover mixer is a rank-1 update, the transverse-field mixer a set of
// per-qubit butterflies. No dense matrices anywhere on the hot path.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gmqaoa/hubo.hpp"
#include "gmqaoa/schedule.hpp"

namespace gmqaoa {

using Amplitude = std::complex<double>;

struct StateVector {
    int n = 0;
    std::vector<Amplitude> amps;

    std::uint64_t size() const { return amps.size(); }
};

inline StateVector init_uniform(int n) {
    const std::uint64_t dim = dimension(n);
    const double a = std::exp2(-0.5 * n);
    return StateVector{n, std::vector<Amplitude>(dim, Amplitude{a, 0.0})};
}

inline double norm_squared(const StateVector& sv) {
    double s = 0.0;
    for (const auto& a : sv.amps) s += std::norm(a);
    return s;
}

namespace detail {

inline void check_same_n(int a, int b) {
    if (a != b) throw std::invalid_argument("statevector/spectrum dimension mismatch");
}

}  // namespace detail

/// amps[z] *= exp(-i gamma E(z)).
inline void apply_cost(StateVector& sv, const Spectrum& sp, double gamma) {
    detail::check_same_n(sv.n, sp.n);
    for (std::uint64_t z = 0; z < sv.size(); ++z)
        sv.amps[z] *= std::polar(1.0, -gamma * sp.energies[z]);
}

/// Rank-1 update: amps += (e^{-2i beta} - 1) * <sym|psi> * 2^{-n/2}.
inline void apply_grover_mixer(StateVector& sv, double beta) {
    const double root = std::exp2(-0.5 * sv.n);
    Amplitude sum{0.0, 0.0};
    for (const auto& a : sv.amps) sum += a;
    const Amplitude shift = (std::polar(1.0, -2.0 * beta) - 1.0) * (root * sum) * root;
    for (auto& a : sv.amps) a += shift;
}

/// Per-qubit rotation exp(-i beta X) = [[cos b, -i sin b], [-i sin b, cos b]].
inline void apply_x_mixer(StateVector& sv, double beta) {
    const double c = std::cos(beta);
    const Amplitude ms{0.0, -std::sin(beta)};
    const std::uint64_t dim = sv.size();
    for (int q = 0; q < sv.n; ++q) {
        const std::uint64_t half = std::uint64_t{1} << q;
        const std::uint64_t stride = half << 1;
        for (std::uint64_t base = 0; base < dim; base += stride) {
            for (std::uint64_t i = base; i < base + half; ++i) {
                const Amplitude a = sv.amps[i];
                const Amplitude b = sv.amps[i + half];
                sv.amps[i] = c * a + ms * b;
                sv.amps[i + half] = ms * a + c * b;
            }
        }
    }
}

inline void apply_mixer(StateVector& sv, Mixer mixer, double beta) {
    if (mixer == Mixer::GM)
        apply_grover_mixer(sv, beta);
    else
        apply_x_mixer(sv, beta);
}

/// Run the full alternating circuit from the uniform state.
inline StateVector run_circuit(const Spectrum& sp, const ParamSchedule& sched, Mixer mixer) {
    StateVector sv = init_uniform(sp.n);
    for (int k = 0; k < sched.depth(); ++k) {
        apply_cost(sv, sp, sched.gammas[k]);
        apply_mixer(sv, mixer, sched.betas[k]);
    }
    return sv;
}

/// Total probability mass on the exact ground level.
inline double success_probability(const StateVector& sv, const Spectrum& sp) {
    detail::check_same_n(sv.n, sp.n);
    double p = 0.0;
    for (std::uint64_t z : sp.ground_states) p += std::norm(sv.amps[z]);
    return p;
}

/// Probability mass per degeneracy level, as (level energy, mass) pairs.
inline std::vector<std::pair<double, double>> energy_distribution(const StateVector& sv,
                                                                  const Spectrum& sp) {
    detail::check_same_n(sv.n, sp.n);
    std::vector<std::pair<double, double>> dist;
    dist.reserve(sp.levels.size());
    for (const auto& lvl : sp.levels) {
        double mass = 0.0;
        for (std::uint64_t z : lvl.members) mass += std::norm(sv.amps[z]);
        dist.emplace_back(lvl.energy, mass);
    }
    return dist;
}

}  // namespace gmqaoa
