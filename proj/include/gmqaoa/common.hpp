// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmqaoa {

/// Hard cap on statevector / spectrum enumeration size (2^24 amplitudes).
inline constexpr int kMaxQubits = 24;

/// Thrown when a request would exceed kMaxQubits (or a configured smaller cap).
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an extreme-value estimate degenerates to zero and cannot be
/// used as an optimization target (e.g. sigma = 0 or a 2-state spectrum).
struct degenerate_estimate_error : std::domain_error {
    using std::domain_error::domain_error;
};

inline std::uint64_t dimension(int n) {
    if (n < 1 || n > kMaxQubits)
        throw capacity_error("qubit count " + std::to_string(n) + " outside [1, " +
                             std::to_string(kMaxQubits) + "]");
    return std::uint64_t{1} << n;
}

/// Shortest round-trip decimal form of a double (used for CSV output).
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace gmqaoa
