// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form model of the Grover-mixer amplitude dynamics under a Gaussian
// energy density with zero mean and variance sigma^2. The energy-resolved
// amplitude after k layers decomposes as
//   psi_k(E) = A_k + sum_{j=1..k} A_{k-j} exp(-i (gamma_k + ... + gamma_{k-j+1}) E)
// with A_0 = 2^{-n/2}, and the energy-independent coefficients obey
//   A_k = (e^{-2 i beta_k} - 1) * sum_{i=1..k} damp(i) A_{k-i}.
// Two damping conventions are provided:
//   SumSq:   damp(i) = exp[-sigma^2/2 (gamma_k^2 + ... + gamma_{k-i+1}^2)]
//   ExactCf: damp(i) = exp[-sigma^2/2 (gamma_k + ... + gamma_{k-i+1})^2]
// ExactCf is the exact Gaussian characteristic function of the accumulated
// phase; SumSq drops the cross terms between layers. They coincide whenever
// at most one gamma is nonzero. Classical pre-optimization of all angles
// maximizes |psi_p(E_min_est)|^2 layer by layer with no statevector calls.

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmqaoa/evt.hpp"
#include "gmqaoa/optimize.hpp"
#include "gmqaoa/schedule.hpp"

namespace gmqaoa {

enum class DampingMode { SumSq, ExactCf };

inline std::string to_string(DampingMode m) {
    return m == DampingMode::SumSq ? "sumsq" : "exact-cf";
}

inline DampingMode damping_mode_from_string(const std::string& s) {
    if (s == "sumsq") return DampingMode::SumSq;
    if (s == "exact-cf") return DampingMode::ExactCf;
    throw std::invalid_argument("unknown damping mode: " + s);
}

/// Immutable value: coefficients A_0..A_k plus the applied angles and their
/// prefix sums (gamma and gamma^2), which make each appended layer O(k).
struct AnalyticState {
    int n = 0;
    double sigma2 = 0.0;
    std::vector<std::complex<double>> a_coeffs;  // A_0..A_k
    std::vector<double> betas, gammas;           // applied angles, length k
    std::vector<double> gamma_prefix;            // S1[t] = gamma_1 + .. + gamma_t, S1[0] = 0
    std::vector<double> gamma_sq_prefix;         // S2[t] = gamma_1^2 + .. + gamma_t^2

    int depth() const { return static_cast<int>(betas.size()); }
};

inline AnalyticState analytic_init(int n, double sigma2) {
    if (n < 1) throw std::invalid_argument("analytic_init: n must be >= 1");
    if (sigma2 < 0.0) throw std::invalid_argument("analytic_init: sigma2 must be >= 0");
    AnalyticState st;
    st.n = n;
    st.sigma2 = sigma2;
    st.a_coeffs = {std::complex<double>(std::exp2(-0.5 * n), 0.0)};
    st.gamma_prefix = {0.0};
    st.gamma_sq_prefix = {0.0};
    return st;
}

/// Append one layer and compute A_{k+1} under the chosen damping.
inline AnalyticState analytic_step(AnalyticState st, double beta, double gamma,
                                   DampingMode mode = DampingMode::SumSq) {
    const int k = st.depth();
    st.betas.push_back(beta);
    st.gammas.push_back(gamma);
    st.gamma_prefix.push_back(st.gamma_prefix.back() + gamma);
    st.gamma_sq_prefix.push_back(st.gamma_sq_prefix.back() + gamma * gamma);

    const double s1_new = st.gamma_prefix.back();
    const double s2_new = st.gamma_sq_prefix.back();
    std::complex<double> sum{0.0, 0.0};
    for (int t = 0; t <= k; ++t) {  // t = k+1-i indexes A_t
        const double damp =
            mode == DampingMode::SumSq
                ? std::exp(-0.5 * st.sigma2 * (s2_new - st.gamma_sq_prefix[t]))
                : std::exp(-0.5 * st.sigma2 * (s1_new - st.gamma_prefix[t]) *
                           (s1_new - st.gamma_prefix[t]));
        sum += damp * st.a_coeffs[t];
    }
    st.a_coeffs.push_back((std::polar(1.0, -2.0 * beta) - 1.0) * sum);
    return st;
}

/// psi_k(e) = A_k + sum_{j=1..k} A_{k-j} exp(-i (S1[k] - S1[k-j]) e).
inline std::complex<double> analytic_amplitude(const AnalyticState& st, double e) {
    const int k = st.depth();
    std::complex<double> psi = st.a_coeffs[k];
    const double s1 = st.gamma_prefix[k];
    for (int t = 0; t < k; ++t)  // t = k-j
        psi += st.a_coeffs[t] * std::polar(1.0, -(s1 - st.gamma_prefix[t]) * e);
    return psi;
}

inline double analytic_success_objective(const AnalyticState& st, double e_min_est) {
    return std::norm(analytic_amplitude(st, e_min_est));
}

/// Classically pre-optimized schedule plus its per-depth model objective.
struct AnalyticPreopt {
    ParamSchedule schedule;
    std::vector<double> objective;  // |psi_k(E_min_est)|^2 after each layer
    double e_min_est = 0.0;
    double sigma2 = 0.0;
    DampingMode mode = DampingMode::SumSq;
};

/// Layer-by-layer maximization of |psi_k(E_min_est)|^2 with earlier layers
/// frozen. Same grid + refinement budget as the statevector path, but each
/// objective call is closed form: for a frozen prefix the new amplitude is
///   psi_{k+1}(e) = (e^{-2 i beta} - 1) W(gamma) + e^{-i gamma e} V
/// with V and (for SumSq) W precomputed once per layer.
inline AnalyticPreopt preoptimize_gm_angles(int n, double sigma2, int depth,
                                            const OptBudget& budget = {},
                                            DampingMode mode = DampingMode::SumSq) {
    if (depth < 1) throw std::invalid_argument("preoptimize_gm_angles: depth must be >= 1");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("preoptimize_gm_angles: sigma2 must be > 0");
    if (n < 2)
        throw degenerate_estimate_error("preoptimize_gm_angles: need n >= 2 for a usable estimate");

    const double sigma = std::sqrt(sigma2);
    const double e_est = emin_estimate_quantile(sigma, n);
    const double gmax = layer_gamma_range(sigma, n, Mixer::GM);

    AnalyticPreopt out;
    out.e_min_est = e_est;
    out.sigma2 = sigma2;
    out.mode = mode;

    AnalyticState st = analytic_init(n, sigma2);
    std::vector<std::pair<double, double>> warm;
    for (int layer = 0; layer < depth; ++layer) {
        const int k = st.depth();
        const double s1 = st.gamma_prefix[k];
        const double s2 = st.gamma_sq_prefix[k];

        std::complex<double> v{0.0, 0.0};  // B_{k+1}(e) / e^{-i gamma e}
        for (int t = 0; t <= k; ++t)
            v += st.a_coeffs[t] * std::polar(1.0, -(s1 - st.gamma_prefix[t]) * e_est);

        std::complex<double> w_sumsq{0.0, 0.0};
        if (mode == DampingMode::SumSq) {
            for (int t = 0; t <= k; ++t)
                w_sumsq += std::exp(-0.5 * sigma2 * (s2 - st.gamma_sq_prefix[t])) * st.a_coeffs[t];
        }

        auto objective = [&](double beta, double gamma) {
            std::complex<double> w;
            if (mode == DampingMode::SumSq) {
                w = std::exp(-0.5 * sigma2 * gamma * gamma) * w_sumsq;
            } else {
                w = std::complex<double>{0.0, 0.0};
                for (int t = 0; t <= k; ++t) {
                    const double c = s1 - st.gamma_prefix[t] + gamma;
                    w += std::exp(-0.5 * sigma2 * c * c) * st.a_coeffs[t];
                }
            }
            const std::complex<double> psi =
                (std::polar(1.0, -2.0 * beta) - 1.0) * w + std::polar(1.0, -gamma * e_est) * v;
            return std::norm(psi);
        };

        const AngleOpt opt = maximize_layer_angles(objective, gmax, budget, warm);
        warm.assign(1, {opt.beta, opt.gamma});
        st = analytic_step(std::move(st), opt.beta, opt.gamma, mode);
        out.schedule.append(opt.beta, opt.gamma);
        out.objective.push_back(analytic_success_objective(st, e_est));
    }
    return out;
}

}  // namespace gmqaoa
