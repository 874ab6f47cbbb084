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
 * Double photon-number-resolving detection. Loss fixes the surviving photon
 * number, so the recombining beam splitter acts block-diagonally: within the
 * sector of 2j photons the amplitude from state ket |ka,kb> to outcome
 * (nc, nd) is the rotation element d^j_{mu,nu}(pi/2) with mu = (nc-nd)/2 and
 * nu = (ka-kb)/2. Every outcome probability collapses to
 *   p(nc, nd) = base + osc * cos(delta*phi),
 * whose two coefficients are assembled once per state and reused across phi.
 */

#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "distribution.hpp"
#include "fisher.hpp"
#include "qfi.hpp"
#include "special_functions.hpp"
#include "states.hpp"

namespace qmetro {

/// Phase-independent coefficients of one photon-number outcome.
struct PnrTerm {
    int nc = 0;
    int nd = 0;
    double base = 0.0;
    double osc = 0.0;  // p = base + osc * cos(delta * phi)
};

namespace detail {

/// transpose_amplitude selects the opposite recombining-beam-splitter
/// orientation (rotation element with swapped indices); it shifts the phase
/// origin by pi/delta and is kept for convention cross-checks.
inline std::vector<PnrTerm> dpnr_profile(const LossyState& state, bool transpose_amplitude) {
    std::map<std::pair<int, int>, std::pair<double, double>> acc;  // (nc,nd) -> (base, osc)
    const auto element = [transpose_amplitude](int sector, int two_mu, int two_nu) {
        return transpose_amplitude ? wigner_d_half_pi(sector, two_nu, two_mu)
                                   : wigner_d_half_pi(sector, two_mu, two_nu);
    };
    for (const auto& [pair, weight] : state.diagonals) {
        const int sector = pair.ka + pair.kb;
        for (int nc = 0; nc <= sector; ++nc) {
            const int nd = sector - nc;
            const double d = element(sector, nc - nd, pair.ka - pair.kb);
            acc[{nc, nd}].first += weight * d * d;
        }
    }
    for (const auto& coh : state.coherences) {
        const int sector = coh.bra.ka + coh.bra.kb;
        for (int nc = 0; nc <= sector; ++nc) {
            const int nd = sector - nc;
            const double d1 = element(sector, nc - nd, coh.bra.ka - coh.bra.kb);
            const double d2 = element(sector, nc - nd, coh.ket.ka - coh.ket.kb);
            acc[{nc, nd}].second += 2.0 * coh.magnitude * d1 * d2;
        }
    }
    std::vector<PnrTerm> profile;
    profile.reserve(acc.size());
    for (const auto& [label, coeffs] : acc) {
        profile.push_back({label.first, label.second, coeffs.first, coeffs.second});
    }
    return profile;
}

}  // namespace detail

inline std::vector<PnrTerm> dpnr_profile(const LossyState& state) {
    return detail::dpnr_profile(state, false);
}

inline OutcomeDistribution dpnr_distribution_from_profile(const std::vector<PnrTerm>& profile,
                                                          int delta, double phi) {
    const double c = std::cos(delta * phi);
    const double s = std::sin(delta * phi);
    OutcomeDistribution dist;
    dist.outcomes.reserve(profile.size());
    for (const auto& term : profile) {
        dist.outcomes.push_back(
            {{term.nc, term.nd}, term.base + term.osc * c, -delta * term.osc * s});
    }
    return dist;
}

/// Joint photon-number distribution over both output ports at a given phase.
inline OutcomeDistribution dpnr_distribution(const LossyState& state, double phi) {
    return dpnr_distribution_from_profile(dpnr_profile(state), state.delta(), phi);
}

/// Closed-form photon-number-resolving Fisher information of a lossy NOON
/// state: the exact QFI times the efficiency factor
///   g = A sin^2(N phi) / (A - 4 (Pa Pb / A) cos^2(N phi)),  A = Pa + Pb,
/// with Px = eta_x^N. The factor is identically 1 for equal losses; the 0/0
/// at sin(N phi) = 0 under equal losses resolves to that same limit.
inline FisherResult cfi_noon_dpnr_closed(int photons, const LossSpec& loss, double phi) {
    if (photons < 1) {
        throw std::invalid_argument("cfi_noon_dpnr_closed: requires at least one photon");
    }
    const FisherResult qfi = qfi_noon(photons, loss);
    const double pa = ipow(loss.eta_a, photons);
    const double pb = ipow(loss.eta_b, photons);
    const double a_sum = pa + pb;
    FisherResult out;
    out.method = FisherMethod::closed_form;
    if (a_sum <= 0.0) {
        out.skipped_terms = 1;
        return out;
    }
    const double s = std::sin(photons * phi);
    const double c = std::cos(photons * phi);
    const double num = a_sum * s * s;
    const double den = a_sum - 4.0 * (pa * pb / a_sum) * c * c;
    const double g = (den < 1e-15 * a_sum) ? 1.0 : num / den;
    out.value = g * qfi.value;
    return out;
}

}  // namespace qmetro
