// Copyright 2026 The qmetro Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exact combinatorics and stable special-function kernels shared by the
 * state, Fisher-information and measurement modules: binomial coefficients,
 * the terminating Gauss hypergeometric series, generalized Laguerre
 * polynomials, and Wigner rotation elements at beta = pi/2.
 *
 * All functions here are pure and reentrant.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace qmetro {

/// Binomial coefficient C(n, k) as an exact integer; 0 when k < 0 or k > n.
/// The stepwise product C(n-k+i, i) stays integral, so no rounding occurs.
/// Restricted to n <= 64 where the result fits a 64-bit integer.
inline std::uint64_t binom_exact(int n, int k) {
    if (n < 0) {
        throw std::invalid_argument("binom_exact: n must be non-negative");
    }
    if (n > 64) {
        throw std::invalid_argument("binom_exact: n > 64 overflows the exact accumulator");
    }
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<std::uint64_t>(acc);
}

inline double binom(int n, int k) { return static_cast<double>(binom_exact(n, k)); }

/// Discrete Heaviside step: 1 for n >= 0 and 0 otherwise (inclusive at 0).
inline int heaviside(int n) { return n >= 0 ? 1 : 0; }

/// log(n!) from a lookup of lgamma values; exact enough that square-rooted
/// factorial ratios stay within a few ulp.
inline double log_factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("log_factorial: negative argument");
    }
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        for (int i = 0; i < 171; ++i) {
            t[i] = std::lgamma(i + 1.0);
        }
        return t;
    }();
    if (n < static_cast<int>(table.size())) {
        return table[n];
    }
    return std::lgamma(n + 1.0);
}

/// Integer power by repeated multiplication. Deterministic and exact for the
/// small exponents used throughout; defines 0^0 = 1.
inline double ipow(double base, int exponent) {
    if (exponent < 0) {
        throw std::invalid_argument("ipow: negative exponent");
    }
    double acc = 1.0;
    for (int i = 0; i < exponent; ++i) {
        acc *= base;
    }
    return acc;
}

/// Terminating Gauss hypergeometric series 2F1(a, b; c; z) with a or b a
/// non-positive integer. The sum has min(|a|, |b|) + 1 terms and is valid for
/// any real z, including |z| > 1. Parameter sets whose c-Pochhammer hits zero
/// before the series terminates are rejected.
inline double hyp2f1_terminating(int a, int b, int c, double z) {
    if (a > 0 && b > 0) {
        throw std::invalid_argument("hyp2f1_terminating: requires a <= 0 or b <= 0");
    }
    int n_terms;  // index of the last non-zero term
    if (a <= 0 && b <= 0) {
        n_terms = std::min(-a, -b);
    } else {
        n_terms = (a <= 0) ? -a : -b;
    }
    if (c <= 0 && -c < n_terms) {
        throw std::invalid_argument("hyp2f1_terminating: c-Pochhammer pole inside the series");
    }
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < n_terms; ++k) {
        term *= static_cast<double>(a + k) * static_cast<double>(b + k) /
                (static_cast<double>(c + k) * static_cast<double>(k + 1)) * z;
        sum += term;
    }
    return sum;
}

/// Generalized Laguerre polynomial L_n^(alpha)(x) via the three-term
/// recurrence in the degree. Valid for integer alpha >= -n.
inline double laguerre(int n, int alpha, double x) {
    if (n < 0) {
        throw std::invalid_argument("laguerre: degree must be non-negative");
    }
    if (n == 0) {
        return 1.0;
    }
    double prev = 1.0;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Index triple (j, mu, nu) of a rotation element, stored as doubled integers
/// so half-integer sectors never touch floating point.
struct WignerIndex {
    int two_j = 0;
    int two_mu = 0;
    int two_nu = 0;
};

/// Wigner rotation element d^j_{mu,nu}(pi/2) = <j,mu|exp(-i pi/2 Jy)|j,nu>.
///
/// The alternating sum is carried out in exact integers: it is a signed
/// Vandermonde-type sum of binomial products whose absolute values add up to
/// C(2j, j+mu), so a 128-bit accumulator is exact for two_j <= 64. Only the
/// square-rooted factorial ratio and the 2^-j scale are floating point, which
/// keeps the absolute error near machine epsilon even in the presence of the
/// heavy cancellation typical of central elements.
inline double wigner_d_half_pi(int two_j, int two_mu, int two_nu) {
    if (two_j < 0 || std::abs(two_mu) > two_j || std::abs(two_nu) > two_j ||
        (two_j - two_mu) % 2 != 0 || (two_j - two_nu) % 2 != 0) {
        throw std::invalid_argument("wigner_d_half_pi: invalid (j, mu, nu) triple");
    }
    if (two_j > 64) {
        throw std::invalid_argument("wigner_d_half_pi: sector larger than two_j = 64");
    }
    const int total = two_j;                 // photons in the sector
    const int k_out = (two_j + two_mu) / 2;  // j + mu
    const int k_in = (two_j + two_nu) / 2;   // j + nu

    __int128 sum = 0;
    const int i_lo = std::max(0, k_out - (total - k_in));
    const int i_hi = std::min(k_in, k_out);
    for (int i = i_lo; i <= i_hi; ++i) {
        const __int128 t = static_cast<__int128>(binom_exact(k_in, i)) *
                           static_cast<__int128>(binom_exact(total - k_in, k_out - i));
        sum += ((k_out - i) % 2 == 0) ? t : -t;
    }
    const double log_ratio = 0.5 * (log_factorial(k_out) + log_factorial(total - k_out) -
                                    log_factorial(k_in) - log_factorial(total - k_in));
    return static_cast<double>(sum) * std::exp2(-0.5 * total) * std::exp(log_ratio);
}

inline double wigner_d_half_pi(const WignerIndex& idx) {
    return wigner_d_half_pi(idx.two_j, idx.two_mu, idx.two_nu);
}

}  // namespace qmetro
