// Copyright 2026 The gmqaoa Authors
// SPDX-License-Identifier: Apache-2.0

// Extreme-value statistics of the minimum of N i.i.d. Gaussian energies:
// standard-normal quantiles, Gumbel location/scale from order statistics,
// quantile and closed-form minimum-energy estimates, and the constant-angle
// schedule built from such an estimate.
//
// Sign convention: the formulas below already parameterize the law of the
// *minimum* (quantiles at 1/N are deep in the left tail, so mu_g < mu and
// the mode/mean estimates come out negative for mu = 0). The mean of the
// minimum's Gumbel law is mu_g - euler_gamma * beta_g.

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gmqaoa/common.hpp"
#include "gmqaoa/schedule.hpp"

namespace gmqaoa {

/// Standard normal CDF via erfc; accurate in both tails.
inline double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

namespace detail {

/// Quantile for p in (0, 0.5]: Acklam's rational minimax approximation
/// (relative error < 1.15e-9) polished by one Halley step against the
/// erfc-based CDF. Restricting to the lower tail keeps Phi(x) - p free of
/// cancellation, so the polish reaches near machine precision.
inline double inv_norm_cdf_lower(double p) {
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x;
    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }

    // One Halley step: F(x) = Phi(x) - p, F' = phi, F'' = -x phi.
    double err = normal_cdf(x) - p;
    double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    if (pdf > 0.0) {
        double u = err / pdf;
        x -= u / (1.0 + 0.5 * x * u);
    }
    return x;
}

}  // namespace detail

/// Standard normal quantile; absolute error stays below 1e-9 across
/// p in [1e-15, 1 - 1e-15]. The upper tail reflects onto the lower one
/// (1 - p is exact for p >= 0.5), which also makes the symmetry
/// inv_norm_cdf(1 - p) = -inv_norm_cdf(p) exact for representable pairs.
inline double inv_norm_cdf(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("inv_norm_cdf: p must lie strictly inside (0, 1)");
    return p > 0.5 ? -detail::inv_norm_cdf_lower(1.0 - p) : detail::inv_norm_cdf_lower(p);
}

/// Location/scale of the Gumbel law of the minimum of `n_states`
/// i.i.d. N(mu, sigma^2) samples, via order-statistic quantiles.
struct GumbelParams {
    double mu_g;    // location (energy units)
    double beta_g;  // scale (energy units, > 0)
};

inline GumbelParams gumbel_params(double mu, double sigma, double n_states) {
    if (!(sigma > 0.0)) throw std::domain_error("gumbel_params: sigma must be > 0");
    if (!(n_states >= 2.0)) throw std::domain_error("gumbel_params: need at least 2 states");
    const double q1 = inv_norm_cdf(1.0 / n_states);
    const double q2 = inv_norm_cdf(1.0 / (std::numbers::e * n_states));
    return GumbelParams{mu + sigma * q1, sigma * (q1 - q2)};
}

/// Gumbel-mode estimate of the minimum over 2^n states: sigma * Phi^{-1}(2^-n).
/// Degenerates to 0 at n = 1 (Phi^{-1}(1/2) = 0); consumers must reject that.
inline double emin_estimate_quantile(double sigma, int n) {
    if (!(sigma > 0.0)) throw std::domain_error("emin_estimate_quantile: sigma must be > 0");
    if (n < 1) throw std::domain_error("emin_estimate_quantile: n must be >= 1");
    return sigma * inv_norm_cdf(std::exp2(static_cast<double>(-n)));
}

/// Closed-form large-n approximation of the same estimate,
/// -sigma sqrt(2 ln 2) sqrt(n) / (1 + ln(n) / (4 n ln 2)).
inline double emin_estimate_closed_form(double sigma, int n) {
    if (!(sigma > 0.0)) throw std::domain_error("emin_estimate_closed_form: sigma must be > 0");
    if (n < 1) throw std::domain_error("emin_estimate_closed_form: n must be >= 1");
    const double ln2 = std::numbers::ln2;
    const double nn = static_cast<double>(n);
    return -sigma * std::sqrt(2.0 * ln2) * std::sqrt(nn) /
           (1.0 + std::log(nn) / (4.0 * ln2 * nn));
}

/// Constant-angle schedule: beta_k = pi/2, gamma_k = -pi / e_min_est.
inline ParamSchedule constant_angles(double e_min_est, int depth) {
    if (depth < 1) throw std::invalid_argument("constant_angles: depth must be >= 1");
    if (e_min_est == 0.0)
        throw degenerate_estimate_error("constant_angles: minimum-energy estimate is zero");
    return ParamSchedule(std::vector<double>(depth, std::numbers::pi / 2.0),
                         std::vector<double>(depth, -std::numbers::pi / e_min_est));
}

}  // namespace gmqaoa
