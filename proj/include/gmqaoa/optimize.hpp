// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Shared per-layer angle search: coarse grid over (beta, gamma) followed by
// Nelder-Mead refinement from the best grid points. Used identically by the
// statevector objective and the closed-form objective so the two routes get
// the same optimization budget. Deterministic: no random restarts.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gmqaoa/evt.hpp"
#include "gmqaoa/schedule.hpp"

namespace gmqaoa {

/// Per-layer search resources. Objective evaluations per layer are
/// grid_beta * grid_gamma + 1 + (up to) multistart * refine_evals.
struct OptBudget {
    int grid_beta = 24;     // beta grid points over [0, pi)
    int grid_gamma = 48;    // gamma grid points over [-gamma_max, gamma_max]
    int refine_evals = 200; // Nelder-Mead evaluation cap per start
    int multistart = 4;     // number of top grid points refined
};

struct AngleOpt {
    double beta = 0.0;
    double gamma = 0.0;
    double value = -std::numeric_limits<double>::infinity();
    long evals = 0;
};

/// Reduce beta to the canonical domain [0, pi); both mixers are
/// pi-periodic in beta at the probability level.
inline double wrap_beta(double beta) {
    double b = std::fmod(beta, std::numbers::pi);
    if (b < 0.0) b += std::numbers::pi;
    return b;
}

/// gamma search half-width. Anchored to the estimated spectral minimum so
/// that a full oracle phase fits in the box; the XM cap keeps phases across
/// one spectral width below 2 pi. Falls back to pi when the estimate
/// degenerates (sigma = 0 or n < 2).
inline double layer_gamma_range(double sigma, int n, Mixer mixer) {
    double g = std::numbers::pi;
    if (sigma > 0.0 && n >= 2) {
        const double e_est = emin_estimate_quantile(sigma, n);
        if (e_est != 0.0) g = 4.0 * std::numbers::pi / std::abs(e_est);
    }
    if (mixer == Mixer::XM && sigma > 0.0) g = std::min(g, 2.0 * std::numbers::pi / sigma);
    return g;
}

namespace detail {

/// Candidates whose values differ by less than this are treated as ties
/// (the local refinement cannot resolve finer differences anyway); ties
/// break to the smallest (|beta|, |gamma|). Many landscapes here carry an
/// exact conjugation degeneracy (beta, gamma) <-> (pi - beta, -gamma), and
/// the angle order picks one branch consistently instead of letting float
/// noise alternate between them across layers.
inline constexpr double kTieTol = 1e-9;

inline bool smaller_angles(const AngleOpt& a, const AngleOpt& b) {
    const double ab = std::abs(a.beta), bb = std::abs(b.beta);
    if (ab != bb) return ab < bb;
    return std::abs(a.gamma) < std::abs(b.gamma);
}

}  // namespace detail

/// Maximize f(beta, gamma) over beta in [0, pi), gamma in [-gamma_max, gamma_max].
/// (0, 0) is always evaluated and wins any tie, so the result is never
/// worse than the identity layer. `warm_starts` get the same local
/// refinement as the top grid points (layer-wise callers pass the previous
/// layer's angles).
template <class F>
AngleOpt maximize_layer_angles(F&& f, double gamma_max, const OptBudget& budget,
                               const std::vector<std::pair<double, double>>& warm_starts = {}) {
    if (budget.grid_beta < 1 || budget.grid_gamma < 1)
        throw std::invalid_argument("optimization budget allows no evaluations");
    if (!(gamma_max > 0.0)) throw std::invalid_argument("gamma_max must be > 0");

    std::vector<AngleOpt> candidates;
    candidates.reserve(static_cast<std::size_t>(budget.grid_beta) * budget.grid_gamma + 1 +
                       static_cast<std::size_t>(std::max(0, budget.multistart)) *
                           std::max(0, budget.refine_evals));
    auto consider = [&](double beta, double gamma) {
        const double b = wrap_beta(beta);
        const double g = std::clamp(gamma, -gamma_max, gamma_max);
        const double v = f(b, g);
        candidates.push_back(AngleOpt{b, g, v, 0});
        return v;
    };

    consider(0.0, 0.0);  // identity fallback

    // Coarse grid, gamma-major so objectives may cache per-gamma work.
    const double dbeta = std::numbers::pi / budget.grid_beta;
    const double dgamma = budget.grid_gamma > 1 ? 2.0 * gamma_max / (budget.grid_gamma - 1) : 0.0;
    std::vector<AngleOpt> starts;  // top grid points, worst first
    const int want = std::max(0, budget.multistart);
    for (int j = 0; j < budget.grid_gamma; ++j) {
        const double gamma = budget.grid_gamma > 1 ? -gamma_max + j * dgamma : 0.0;
        for (int i = 0; i < budget.grid_beta; ++i) {
            const double beta = i * dbeta;
            const double v = consider(beta, gamma);
            if (want == 0) continue;
            if (static_cast<int>(starts.size()) < want) {
                starts.push_back(AngleOpt{beta, gamma, v, 0});
                std::sort(starts.begin(), starts.end(),
                          [](const AngleOpt& a, const AngleOpt& b) { return a.value < b.value; });
            } else if (v > starts.front().value) {
                starts.front() = AngleOpt{beta, gamma, v, 0};
                std::sort(starts.begin(), starts.end(),
                          [](const AngleOpt& a, const AngleOpt& b) { return a.value < b.value; });
            }
        }
    }

    for (const auto& [wb, wg] : warm_starts) {
        const double b = wrap_beta(wb);
        const double g = std::clamp(wg, -gamma_max, gamma_max);
        starts.push_back(AngleOpt{b, g, consider(b, g), 0});
    }

    // Nelder-Mead from each start (maximization via negated comparisons).
    for (const auto& start : starts) {
        if (budget.refine_evals <= 0) break;
        struct Vertex {
            std::array<double, 2> x;
            double v;
        };
        int used = 0;
        auto eval = [&](std::array<double, 2> x) {
            ++used;
            return consider(x[0], x[1]);
        };
        const double db = 0.5 * dbeta;
        const double dg = budget.grid_gamma > 1 ? 0.5 * dgamma : 0.5 * gamma_max;
        std::array<Vertex, 3> sx;
        sx[0] = {{start.beta, start.gamma}, start.value};
        sx[1] = {{start.beta + db, start.gamma}, 0.0};
        sx[2] = {{start.beta, start.gamma + dg}, 0.0};
        sx[1].v = eval(sx[1].x);
        sx[2].v = eval(sx[2].x);

        constexpr double kTol = 1e-10;
        while (used < budget.refine_evals) {
            std::sort(sx.begin(), sx.end(), [](const Vertex& a, const Vertex& b) { return a.v > b.v; });
            if (sx[0].v - sx[2].v < kTol) break;
            const std::array<double, 2> centroid{(sx[0].x[0] + sx[1].x[0]) / 2.0,
                                                 (sx[0].x[1] + sx[1].x[1]) / 2.0};
            auto along = [&](double t) {
                return std::array<double, 2>{centroid[0] + t * (centroid[0] - sx[2].x[0]),
                                             centroid[1] + t * (centroid[1] - sx[2].x[1])};
            };
            const auto xr = along(1.0);
            const double vr = eval(xr);
            if (vr > sx[0].v) {
                if (used >= budget.refine_evals) break;
                const auto xe = along(2.0);
                const double ve = eval(xe);
                sx[2] = ve > vr ? Vertex{xe, ve} : Vertex{xr, vr};
            } else if (vr > sx[1].v) {
                sx[2] = Vertex{xr, vr};
            } else {
                const bool outside = vr > sx[2].v;
                const auto xc = along(outside ? 0.5 : -0.5);
                if (used >= budget.refine_evals) break;
                const double vc = eval(xc);
                if (vc > (outside ? vr : sx[2].v)) {
                    sx[2] = Vertex{xc, vc};
                } else {
                    // Shrink toward the best vertex.
                    for (int k = 1; k < 3; ++k) {
                        if (used >= budget.refine_evals) break;
                        sx[k].x = {(sx[k].x[0] + sx[0].x[0]) / 2.0, (sx[k].x[1] + sx[0].x[1]) / 2.0};
                        sx[k].v = eval(sx[k].x);
                    }
                }
            }
        }
    }

    double top = candidates.front().value;
    for (const auto& c : candidates) top = std::max(top, c.value);
    AngleOpt best;
    for (const auto& c : candidates) {
        if (c.value < top - detail::kTieTol) continue;
        if (best.value == -std::numeric_limits<double>::infinity() ||
            detail::smaller_angles(c, best))
            best = c;
    }
    best.evals = static_cast<long>(candidates.size());
    return best;
}

}  // namespace gmqaoa
