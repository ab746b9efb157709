// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Greedy layer-wise optimization of (beta_k, gamma_k) against the exact
// success probability P(E_min) computed from the statevector. Earlier
// layers stay frozen; each new layer is searched with the shared grid +
// Nelder-Mead machinery.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "gmqaoa/optimize.hpp"
#include "gmqaoa/statevector.hpp"

namespace gmqaoa {

namespace detail {

/// P(E_min) of the circuit `prefix + one (beta, gamma) layer`, evaluated
/// from a frozen prefix state. Caches the post-cost state per gamma: the
/// grid sweeps beta innermost, so for GM each beta costs O(#ground states)
/// and for XM one butterfly pass.
class LayerObjective {
  public:
    LayerObjective(const Spectrum& sp, const StateVector& prefix, Mixer mixer)
        : sp_(sp), prefix_(prefix), mixer_(mixer) {}

    double operator()(double beta, double gamma) const {
        if (!cached_ || gamma != cached_gamma_) prepare_gamma(gamma);
        if (mixer_ == Mixer::GM) {
            // amps[z] -> amps[z] + c * overlap * 2^{-n/2}; expand the ground mass.
            const Amplitude c = std::polar(1.0, -2.0 * beta) - 1.0;
            const Amplitude cs = c * shift_;
            return ground_mass_ + 2.0 * (cs * ground_conj_sum_).real() +
                   static_cast<double>(sp_.ground_states.size()) * std::norm(cs);
        }
        scratch_ = cost_state_;  // assignment reuses the allocation
        apply_x_mixer(scratch_, beta);
        return success_probability(scratch_, sp_);
    }

  private:
    void prepare_gamma(double gamma) const {
        cost_state_ = prefix_;
        apply_cost(cost_state_, sp_, gamma);
        cached_gamma_ = gamma;
        cached_ = true;
        if (mixer_ == Mixer::GM) {
            const double root = std::exp2(-0.5 * cost_state_.n);
            Amplitude sum{0.0, 0.0};
            for (const auto& a : cost_state_.amps) sum += a;
            shift_ = root * sum * root;
            ground_mass_ = 0.0;
            ground_conj_sum_ = Amplitude{0.0, 0.0};
            for (std::uint64_t z : sp_.ground_states) {
                ground_mass_ += std::norm(cost_state_.amps[z]);
                ground_conj_sum_ += std::conj(cost_state_.amps[z]);
            }
        }
    }

    const Spectrum& sp_;
    const StateVector& prefix_;
    Mixer mixer_;
    mutable bool cached_ = false;
    mutable double cached_gamma_ = 0.0;
    mutable StateVector cost_state_;
    mutable StateVector scratch_;
    mutable Amplitude shift_{0.0, 0.0};       // overlap * 2^{-n/2} after cost
    mutable double ground_mass_ = 0.0;        // sum |a_z|^2 over ground states
    mutable Amplitude ground_conj_sum_{0.0, 0.0};
};

inline double objective_gamma_range(const Spectrum& sp, Mixer mixer) {
    return layer_gamma_range(std::sqrt(std::max(0.0, spectral_variance(sp))), sp.n, mixer);
}

}  // namespace detail

struct LayerResult {
    double beta = 0.0;
    double gamma = 0.0;
    double p = 0.0;   // success probability at the returned angles
    long evals = 0;
};

/// Optimized depth-(k+1) trace: schedule grown one layer per step with the
/// success probability and evaluation count recorded after each depth.
struct LayerwiseTrace {
    Mixer mixer = Mixer::GM;
    ParamSchedule schedule;
    std::vector<double> p_success;
    std::vector<long> evals;
};

namespace detail {

inline LayerResult optimize_next_layer(const Spectrum& sp, const StateVector& prefix_state,
                                       Mixer mixer, const OptBudget& budget,
                                       const std::vector<std::pair<double, double>>& warm = {}) {
    const LayerObjective objective(sp, prefix_state, mixer);
    const double gmax = objective_gamma_range(sp, mixer);
    const AngleOpt opt = maximize_layer_angles(objective, gmax, budget, warm);

    // Report p from a full state application so the trace is exactly
    // reproducible by run_circuit with the returned angles.
    StateVector sv = prefix_state;
    apply_cost(sv, sp, opt.gamma);
    apply_mixer(sv, mixer, opt.beta);
    return LayerResult{opt.beta, opt.gamma, success_probability(sv, sp), opt.evals};
}

}  // namespace detail

/// Best (beta, gamma) for one additional layer on top of a frozen prefix.
/// Never returns p below the prefix's own success probability: the identity
/// angles (0, 0) are always in the candidate set.
inline LayerResult optimize_layer(const Spectrum& sp, const ParamSchedule& prefix, Mixer mixer,
                                  const OptBudget& budget = {}) {
    const StateVector prefix_state = run_circuit(sp, prefix, mixer);
    std::vector<std::pair<double, double>> warm;
    if (prefix.depth() > 0) warm.emplace_back(prefix.betas.back(), prefix.gammas.back());
    return detail::optimize_next_layer(sp, prefix_state, mixer, budget, warm);
}

/// Grow a schedule to max_depth, optimizing one layer at a time.
inline LayerwiseTrace optimize_layerwise(const Spectrum& sp, Mixer mixer, int max_depth,
                                         const OptBudget& budget = {}) {
    if (max_depth < 1) throw std::invalid_argument("optimize_layerwise: max_depth must be >= 1");
    LayerwiseTrace trace;
    trace.mixer = mixer;
    StateVector sv = init_uniform(sp.n);
    std::vector<std::pair<double, double>> warm;
    for (int k = 0; k < max_depth; ++k) {
        const LayerResult lr = detail::optimize_next_layer(sp, sv, mixer, budget, warm);
        warm.assign(1, {lr.beta, lr.gamma});
        apply_cost(sv, sp, lr.gamma);
        apply_mixer(sv, mixer, lr.beta);
        trace.schedule.append(lr.beta, lr.gamma);
        trace.p_success.push_back(lr.p);
        trace.evals.push_back(lr.evals);
    }
    return trace;
}

}  // namespace gmqaoa
