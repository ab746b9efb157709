// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// HUBO problem instances over n spins s_i in {+1, -1}:
//   E(s) = sum over terms of coeff * prod_{i in sites} s_i
// Basis-state convention: bit i of the integer z encodes spin i,
// with 0 <-> +1 and 1 <-> -1. This is the single place that fixes the
// sign convention; everything else goes through energy().

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmqaoa/common.hpp"
#include "gmqaoa/rng.hpp"

namespace gmqaoa {

/// One interaction term: strictly increasing 0-based site indices and a
/// real coupling coefficient.
struct HuboTerm {
    std::vector<int> sites;
    double coeff = 0.0;
};

struct HuboInstance {
    int n = 0;                // spin count
    int order = 0;            // maximum interaction order D
    std::vector<HuboTerm> terms;
    std::string label;        // provenance (ensemble name, seed)

    /// Enforce the structural invariants; throws std::invalid_argument.
    void validate() const {
        if (n < 1) throw std::invalid_argument("instance: n must be >= 1");
        if (order < 1 || order > n)
            throw std::invalid_argument("instance: order must lie in [1, n]");
        std::vector<std::vector<int>> seen;
        seen.reserve(terms.size());
        for (const auto& t : terms) {
            if (t.sites.empty() || static_cast<int>(t.sites.size()) > order)
                throw std::invalid_argument("term: site count outside [1, order]");
            for (std::size_t i = 0; i < t.sites.size(); ++i) {
                if (t.sites[i] < 0 || t.sites[i] >= n)
                    throw std::invalid_argument("term: site index out of range");
                if (i > 0 && t.sites[i] <= t.sites[i - 1])
                    throw std::invalid_argument("term: sites must be strictly increasing");
            }
            seen.push_back(t.sites);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("instance: duplicate term sites (merge coefficients first)");
    }
};

namespace detail {

inline std::uint64_t term_mask(const HuboTerm& t) {
    std::uint64_t m = 0;
    for (int s : t.sites) m |= std::uint64_t{1} << s;
    return m;
}

}  // namespace detail

/// E(z) for one basis state: product of spins = +1 iff the parity of
/// z restricted to the term's sites is even.
inline double energy(const HuboInstance& inst, std::uint64_t z) {
    double e = 0.0;
    for (const auto& t : inst.terms) {
        const int parity = std::popcount(z & detail::term_mask(t)) & 1;
        e += parity ? -t.coeff : t.coeff;
    }
    return e;
}

/// Spectral variance sum over terms of coeff^2. Equals the second moment
/// (1/2^n) sum_z E(z)^2 because distinct spin monomials are orthogonal.
inline double sigma_squared(const HuboInstance& inst) {
    double s = 0.0;
    for (const auto& t : inst.terms) s += t.coeff * t.coeff;
    return s;
}

struct SpectrumLevel {
    double energy = 0.0;                  // smallest member energy
    std::vector<std::uint64_t> members;   // basis indices, ascending
};

/// Full energy table of an instance with degeneracy grouping.
struct Spectrum {
    int n = 0;
    std::vector<double> energies;              // indexed by basis state z
    double e_min = 0.0;
    std::vector<std::uint64_t> ground_states;  // members of the lowest level
    std::vector<SpectrumLevel> levels;         // strictly increasing energies

    std::uint64_t size() const { return energies.size(); }
};

/// Default degeneracy tolerance: robust to float noise on continuous
/// spectra, far below the unit gaps of integer-valued ones.
inline double default_group_tol(double e_min) {
    return 1e-9 * std::max(1.0, std::abs(e_min));
}

/// Build a Spectrum from an explicit energy table (also the override hook
/// for diagnostic landscapes that are not expressible as low-order HUBOs).
/// group_tol < 0 selects the default rule.
inline Spectrum spectrum_from_energies(int n, std::vector<double> energies, double group_tol = -1.0) {
    const std::uint64_t dim = dimension(n);
    if (energies.size() != dim)
        throw std::invalid_argument("spectrum: energy table size must be 2^n");

    Spectrum sp;
    sp.n = n;
    sp.energies = std::move(energies);
    sp.e_min = *std::min_element(sp.energies.begin(), sp.energies.end());
    const double tol = group_tol < 0.0 ? default_group_tol(sp.e_min) : group_tol;

    std::vector<std::uint64_t> order(dim);
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint64_t a, std::uint64_t b) { return sp.energies[a] < sp.energies[b]; });

    // New level whenever the spread from the level's first energy exceeds
    // the tolerance; keeps every level's width <= tol.
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double e = sp.energies[order[i]];
        if (sp.levels.empty() || e - sp.levels.back().energy > tol)
            sp.levels.push_back(SpectrumLevel{e, {}});
        sp.levels.back().members.push_back(order[i]);
    }
    for (auto& lvl : sp.levels) std::sort(lvl.members.begin(), lvl.members.end());
    sp.ground_states = sp.levels.front().members;
    return sp;
}

/// Enumerate all 2^n energies of an instance. group_tol < 0 selects the
/// default rule. Throws capacity_error beyond kMaxQubits.
inline Spectrum enumerate_spectrum(const HuboInstance& inst, double group_tol = -1.0) {
    const std::uint64_t dim = dimension(inst.n);

    std::vector<std::uint64_t> masks(inst.terms.size());
    std::vector<double> coeffs(inst.terms.size());
    for (std::size_t t = 0; t < inst.terms.size(); ++t) {
        masks[t] = detail::term_mask(inst.terms[t]);
        coeffs[t] = inst.terms[t].coeff;
    }

    std::vector<double> energies(dim, 0.0);
    for (std::uint64_t z = 0; z < dim; ++z) {
        double e = 0.0;
        for (std::size_t t = 0; t < masks.size(); ++t)
            e += (std::popcount(z & masks[t]) & 1) ? -coeffs[t] : coeffs[t];
        energies[z] = e;
    }
    return spectrum_from_energies(inst.n, std::move(energies), group_tol);
}

/// Mean and variance of the energy table (for scaling heuristics on raw
/// spectra; equals sigma_squared for merged traceless instances).
inline double spectral_variance(const Spectrum& sp) {
    double mean = 0.0;
    for (double e : sp.energies) mean += e;
    mean /= static_cast<double>(sp.size());
    double var = 0.0;
    for (double e : sp.energies) var += (e - mean) * (e - mean);
    return var / static_cast<double>(sp.size());
}

/// Diagnostic landscape: energy -1 on one marked state, 0 elsewhere.
inline Spectrum needle_spectrum(int n, std::uint64_t marked = 0) {
    const std::uint64_t dim = dimension(n);
    if (marked >= dim) throw std::invalid_argument("needle: marked state out of range");
    std::vector<double> energies(dim, 0.0);
    energies[marked] = -1.0;
    return spectrum_from_energies(n, std::move(energies));
}

namespace detail {

/// Visit all site subsets {i1 < ... < id} for d = 2..order in a fixed
/// (d-major, lexicographic) order shared by every generator.
template <class Fn>
void for_each_subset(int n, int order, Fn&& fn) {
    std::vector<int> idx;
    for (int d = 2; d <= order; ++d) {
        idx.resize(d);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            fn(idx);
            int i = d - 1;
            while (i >= 0 && idx[i] == n - d + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
}

inline void check_generator_args(int n, int order) {
    if (n < 1) throw std::invalid_argument("generator: n must be >= 1");
    if (order < 2 || order > n)
        throw std::invalid_argument("generator: order must lie in [2, n]");
}

}  // namespace detail

/// Fully connected ensemble: one term per subset of size 2..order with an
/// i.i.d. standard normal coefficient. Linear terms are absent.
inline HuboInstance generate_sk(int n, int order, std::uint64_t seed) {
    detail::check_generator_args(n, order);
    SplitMix64 rng(seed);
    HuboInstance inst;
    inst.n = n;
    inst.order = order;
    inst.label = "sk:n=" + std::to_string(n) + ":D=" + std::to_string(order) +
                 ":seed=" + std::to_string(seed);
    detail::for_each_subset(n, order, [&](const std::vector<int>& sites) {
        inst.terms.push_back(HuboTerm{sites, rng.gaussian()});
    });
    return inst;
}

/// Random hypergraph ensemble: each subset of size 2..order is included
/// independently with probability 1/2, coefficient `sign` (default +1).
/// One uniform draw is consumed per candidate subset whether or not it is
/// included, so instances with the same seed are stable.
inline HuboInstance generate_maxcut_hypergraph(int n, int order, std::uint64_t seed,
                                               double sign = 1.0) {
    detail::check_generator_args(n, order);
    SplitMix64 rng(seed);
    HuboInstance inst;
    inst.n = n;
    inst.order = order;
    inst.label = "maxcut:n=" + std::to_string(n) + ":D=" + std::to_string(order) +
                 ":seed=" + std::to_string(seed);
    detail::for_each_subset(n, order, [&](const std::vector<int>& sites) {
        if (rng.uniform01() < 0.5) inst.terms.push_back(HuboTerm{sites, sign});
    });
    return inst;
}

}  // namespace gmqaoa
