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
 * Probe-state descriptions and their propagation through a single-arm phase
 * shift followed by two-arm photon loss.
 *
 * The probe |m::n> = (|m,n> + |n,m>)/sqrt(2) with m > n picks up the phase
 * only through the coherence between the |m,n> and |n,m> branches, so the
 * mixed state after loss is stored symbolically in phi: diagonal weights plus
 * coherence records whose matrix element is magnitude * exp(i*(m-n)*phi).
 * Every downstream probability then has the form a + b*cos((m-n)*phi + c),
 * which gives analytic phi-derivatives with no finite differencing.
 */

#pragma once

#include <cmath>
#include <compare>
#include <map>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "special_functions.hpp"

namespace qmetro {

/// Path-entangled Fock probe (|m,n> + |n,m>)/sqrt(2) with m > n >= 0.
struct Pefs {
    int m = 0;
    int n = 0;
};

/// N-photon path-entangled probe (|N,0> + |0,N>)/sqrt(2).
struct Noon {
    int photons = 0;
};

/// Lossless superposition sqrt(p)|Ne::0> + sqrt(1-p)|No::0> of an even- and
/// an odd-photon-number probe.
struct SuperposedNoon {
    int n_even = 0;
    int n_odd = 0;
    double weight_even = 0.0;
};

using ProbeSpec = std::variant<Pefs, Noon, SuperposedNoon>;

inline Pefs make_pefs(int m, int n) {
    if (!(m > n && n >= 0)) {
        throw std::invalid_argument("make_pefs: requires m > n >= 0");
    }
    return Pefs{m, n};
}

inline Noon make_noon(int photons) {
    if (photons < 1) {
        throw std::invalid_argument("make_noon: requires at least one photon");
    }
    return Noon{photons};
}

inline SuperposedNoon make_superposed_noon(int n_even, int n_odd, double weight_even) {
    if (n_even < 2 || n_even % 2 != 0) {
        throw std::invalid_argument("make_superposed_noon: n_even must be a positive even count");
    }
    if (n_odd < 1 || n_odd % 2 != 1) {
        throw std::invalid_argument("make_superposed_noon: n_odd must be a positive odd count");
    }
    if (!(weight_even >= 0.0 && weight_even <= 1.0)) {
        throw std::invalid_argument("make_superposed_noon: weight must lie in [0, 1]");
    }
    return SuperposedNoon{n_even, n_odd, weight_even};
}

/// Transmissivities of the two fictitious loss beam splitters. The loss
/// rates gamma = 1 - eta are always derived, never stored.
struct LossSpec {
    double eta_a = 1.0;
    double eta_b = 1.0;
    double gamma_a() const { return 1.0 - eta_a; }
    double gamma_b() const { return 1.0 - eta_b; }
};

inline LossSpec make_loss(double eta_a, double eta_b) {
    if (!(eta_a >= 0.0 && eta_a <= 1.0 && eta_b >= 0.0 && eta_b <= 1.0)) {
        throw std::invalid_argument("make_loss: transmissivities must lie in [0, 1]");
    }
    return LossSpec{eta_a, eta_b};
}

struct FockPair {
    int ka = 0;
    int kb = 0;
    friend auto operator<=>(const FockPair&, const FockPair&) = default;
};

namespace detail {

/// (m, n) of a fixed-photon-number probe; a NOON state is the n = 0 case.
inline std::pair<int, int> pefs_parameters(const ProbeSpec& probe) {
    if (const auto* p = std::get_if<Pefs>(&probe)) {
        return {p->m, p->n};
    }
    if (const auto* p = std::get_if<Noon>(&probe)) {
        return {p->photons, 0};
    }
    throw std::invalid_argument("probe variant carries no single (m, n) photon pair");
}

}  // namespace detail

/// Weight of the loss branch that removes l_a photons from arm a and l_b from
/// arm b when arm a holds k of the xi input photons:
///   C(k, l_a) C(xi-k, l_b) eta_a^(k-l_a) gamma_a^l_a eta_b^(xi-k-l_b) gamma_b^l_b.
/// Evaluated in this exponent-separated form; the algebraically equivalent
/// eta^k (1/eta - 1)^l is singular at eta = 0 and is never used.
inline double b_coeff(int k, int l_a, int l_b, int xi, const LossSpec& loss) {
    if (k < 0 || k > xi) {
        throw std::invalid_argument("b_coeff: k must lie in 0..xi");
    }
    if (l_a < 0 || l_b < 0 || l_a > k || l_b > xi - k) {
        return 0.0;
    }
    return binom(k, l_a) * binom(xi - k, l_b) * ipow(loss.eta_a, k - l_a) *
           ipow(loss.gamma_a(), l_a) * ipow(loss.eta_b, xi - k - l_b) *
           ipow(loss.gamma_b(), l_b);
}

/// Support indicator H[k - l_a] - H[k - xi + l_b - 1]: 1 exactly when the
/// branch can physically occur (l_a <= k and l_b <= xi - k), else 0.
inline int c_indicator(int k, int l_a, int l_b, int xi) {
    return (l_a <= k && l_b <= xi - k) ? 1 : 0;
}

/// Structured mixed state after phase shift and loss.
struct LossyState {
    int m = 0;
    int n = 0;

    struct Coherence {
        FockPair bra;
        FockPair ket;
        double magnitude = 0.0;  // element (bra, ket) = magnitude * exp(i * delta * phi)
    };

    std::vector<std::pair<FockPair, double>> diagonals;  // sorted, weights > 0
    std::vector<Coherence> coherences;

    int total() const { return m + n; }
    int delta() const { return m - n; }

    double trace() const {
        double acc = 0.0;
        for (const auto& [pair, weight] : diagonals) {
            acc += weight;
        }
        return acc;
    }

    double diagonal_weight(FockPair p) const {
        for (const auto& [pair, weight] : diagonals) {
            if (pair == p) {
                return weight;
            }
        }
        return 0.0;
    }
};

/// Propagates a fixed-photon-number probe through the loss channel. Diagonal
/// collisions between the two branches are summed; coherences exist only for
/// l_a, l_b <= n where both branch indicators are 1, and each links
/// (m-l_a, n-l_b) with (n-l_a, m-l_b).
inline LossyState evolve_lossy(const ProbeSpec& probe, const LossSpec& loss) {
    const auto [m, n] = detail::pefs_parameters(probe);
    const int xi = m + n;

    std::map<FockPair, double> diag;
    for (int la = 0; la <= m; ++la) {
        for (int lb = 0; lb <= n; ++lb) {
            diag[{m - la, n - lb}] += 0.5 * b_coeff(m, la, lb, xi, loss);
        }
    }
    for (int la = 0; la <= n; ++la) {
        for (int lb = 0; lb <= m; ++lb) {
            diag[{n - la, m - lb}] += 0.5 * b_coeff(n, la, lb, xi, loss);
        }
    }

    LossyState state;
    state.m = m;
    state.n = n;
    for (const auto& [pair, weight] : diag) {
        if (weight > 0.0) {
            state.diagonals.emplace_back(pair, weight);
        }
    }
    for (int la = 0; la <= n; ++la) {
        for (int lb = 0; lb <= n; ++lb) {
            const double mag =
                0.5 * std::sqrt(b_coeff(m, la, lb, xi, loss) * b_coeff(n, la, lb, xi, loss));
            if (mag > 0.0) {
                state.coherences.push_back(
                    {{m - la, n - lb}, {n - la, m - lb}, mag});
            }
        }
    }
    return state;
}

/// Block form of a lossy NOON state: one phase-carrying two-level branch of
/// weight (eta_a^N + eta_b^N)/2 plus a phi-independent diagonal tail.
struct NoonDirectSum {
    double weight_xi = 0.0;                              // phase-carrying branch weight
    double amp_a = 0.0;                                  // sqrt(eta_a^N), unnormalized
    double amp_b = 0.0;                                  // sqrt(eta_b^N), unnormalized
    std::vector<std::pair<FockPair, double>> rho_d;      // 2N entries at most
};

inline NoonDirectSum noon_direct_sum(int photons, const LossSpec& loss) {
    if (photons < 1) {
        throw std::invalid_argument("noon_direct_sum: requires at least one photon");
    }
    const int n_ph = photons;
    NoonDirectSum block;
    const double pa = ipow(loss.eta_a, n_ph);
    const double pb = ipow(loss.eta_b, n_ph);
    block.weight_xi = 0.5 * (pa + pb);
    block.amp_a = std::sqrt(pa);
    block.amp_b = std::sqrt(pb);
    for (int l = 1; l <= n_ph; ++l) {
        const double wa = 0.5 * b_coeff(n_ph, l, 0, n_ph, loss);
        if (wa > 0.0) {
            block.rho_d.emplace_back(FockPair{n_ph - l, 0}, wa);
        }
    }
    for (int l = 1; l <= n_ph; ++l) {
        const double wb = 0.5 * b_coeff(0, 0, l, n_ph, loss);
        if (wb > 0.0) {
            block.rho_d.emplace_back(FockPair{0, n_ph - l}, wb);
        }
    }
    return block;
}

/// Reassembles the block form into the generic representation, for
/// consistency checks against evolve_lossy on the same probe.
inline LossyState to_lossy_state(const NoonDirectSum& block, int photons) {
    LossyState state;
    state.m = photons;
    state.n = 0;
    std::map<FockPair, double> diag;
    diag[{photons, 0}] = 0.5 * block.amp_a * block.amp_a;
    diag[{0, photons}] = 0.5 * block.amp_b * block.amp_b;
    for (const auto& [pair, weight] : block.rho_d) {
        diag[pair] += weight;
    }
    for (const auto& [pair, weight] : diag) {
        if (weight > 0.0) {
            state.diagonals.emplace_back(pair, weight);
        }
    }
    const double mag = 0.5 * block.amp_a * block.amp_b;
    if (mag > 0.0) {
        state.coherences.push_back({{photons, 0}, {0, photons}, mag});
    }
    return state;
}

}  // namespace qmetro
