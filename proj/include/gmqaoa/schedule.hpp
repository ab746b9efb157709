// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace gmqaoa {

/// Mixer variant of a circuit: per-qubit X rotations or the rank-1
/// rephasing of the uniform superposition.
enum class Mixer { XM, GM };

/// Paired angle vectors (betas[k], gammas[k]) for a depth-p circuit.
/// betas are radians; gammas are radians per unit of energy.
struct ParamSchedule {
    std::vector<double> betas;
    std::vector<double> gammas;

    ParamSchedule() = default;
    ParamSchedule(std::vector<double> b, std::vector<double> g)
        : betas(std::move(b)), gammas(std::move(g)) {
        if (betas.size() != gammas.size())
            throw std::invalid_argument("schedule: betas/gammas length mismatch");
    }

    int depth() const { return static_cast<int>(betas.size()); }

    void append(double beta, double gamma) {
        betas.push_back(beta);
        gammas.push_back(gamma);
    }

    /// First `p` layers as a new schedule.
    ParamSchedule prefix(int p) const {
        if (p < 0 || p > depth()) throw std::out_of_range("schedule prefix length");
        return ParamSchedule(std::vector<double>(betas.begin(), betas.begin() + p),
                             std::vector<double>(gammas.begin(), gammas.begin() + p));
    }
};

}  // namespace gmqaoa
