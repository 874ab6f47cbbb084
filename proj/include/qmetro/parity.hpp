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
 * Parity detection behind the recombining beam splitter. Folding that beam
 * splitter into the measurement turns the port parities into Fock-space
 * kernels: the port-c parity becomes the mode swap |k,l><l,k|, the port-d
 * parity the swap weighted by (-1)^(k+l), and their product the diagonal
 * (-1)^(k+l). Expectations over the structured state therefore reduce to
 *   <Pi_c> = D + E cos(delta*phi),
 *   <Pi_d> = D + (-1)^delta E cos(delta*phi),
 * with D the swap-axis diagonal weight and E twice the sum of swap-symmetric
 * coherence magnitudes. D and E also have closed forms in terms of the
 * terminating 2F1; that route divides by gamma_a*gamma_b and is replaced by
 * the direct kernel contraction when the product falls below 1e-12.
 */

#pragma once

#include <cmath>
#include <stdexcept>

#include "distribution.hpp"
#include "fisher.hpp"
#include "special_functions.hpp"
#include "states.hpp"

namespace qmetro {

/// The three parity expectations and the phi-derivatives of the two port
/// parities. <Pi_c Pi_d> is phi-independent because the total photon parity
/// commutes with the recombining beam splitter.
struct ParityExpectations {
    double exp_c = 0.0;
    double exp_d = 0.0;
    double exp_cd = 0.0;
    double d_exp_c = 0.0;
    double d_exp_d = 0.0;
};

namespace detail {

inline std::pair<double, double> parity_de_closed(int m, int n, const LossSpec& loss) {
    const int delta = m - n;
    const double ga = loss.gamma_a();
    const double gb = loss.gamma_b();
    const double z = loss.eta_a * loss.eta_b / (ga * gb);
    const double d = 0.5 * hyp2f1_terminating(-m, -n, 1, z) *
                     (ipow(ga, m) * ipow(gb, n) + ipow(ga, n) * ipow(gb, m));
    const double e = binom(m, delta) * hyp2f1_terminating(-n, -n, 1 + delta, z) *
                     std::pow(loss.eta_a * loss.eta_b, 0.5 * delta) * ipow(ga, n) * ipow(gb, n);
    return {d, e};
}

inline std::pair<double, double> parity_de_direct(const LossyState& state) {
    double d = 0.0;
    double e = 0.0;
    for (const auto& [pair, weight] : state.diagonals) {
        if (pair.ka == pair.kb) {
            d += weight;
        }
    }
    for (const auto& coh : state.coherences) {
        if (coh.bra.ka == coh.ket.kb && coh.bra.kb == coh.ket.ka) {
            e += 2.0 * coh.magnitude;
        }
    }
    return {d, e};
}

inline double parity_product_expectation(int m, int n, const LossSpec& loss) {
    return 0.5 * (ipow(1.0 - 2.0 * loss.eta_a, m) * ipow(1.0 - 2.0 * loss.eta_b, n) +
                  ipow(1.0 - 2.0 * loss.eta_a, n) * ipow(1.0 - 2.0 * loss.eta_b, m));
}

}  // namespace detail

inline ParityExpectations parity_expectations(const ProbeSpec& probe, const LossSpec& loss,
                                              double phi) {
    const auto [m, n] = detail::pefs_parameters(probe);
    const int delta = m - n;

    double d, e;
    if (loss.gamma_a() * loss.gamma_b() < 1e-12) {
        const auto de = detail::parity_de_direct(evolve_lossy(probe, loss));
        d = de.first;
        e = de.second;
    } else {
        const auto de = detail::parity_de_closed(m, n, loss);
        d = de.first;
        e = de.second;
    }

    const double osc = std::cos(delta * phi);
    const double dosc = -delta * std::sin(delta * phi);
    const double sign = (delta % 2 == 0) ? 1.0 : -1.0;

    ParityExpectations out;
    out.exp_c = d + e * osc;
    out.exp_d = d + sign * e * osc;
    out.d_exp_c = e * dosc;
    out.d_exp_d = sign * e * dosc;
    out.exp_cd = detail::parity_product_expectation(m, n, loss);
    return out;
}

/// Four-outcome distribution of the joint parity readout, labelled
/// (+1/-1, +1/-1), reconstructed linearly from the three expectations.
inline OutcomeDistribution dp_distribution(const ParityExpectations& ex) {
    OutcomeDistribution dist;
    for (int pc : {+1, -1}) {
        for (int pd : {+1, -1}) {
            const double p =
                0.25 * (1.0 + pc * ex.exp_c + pd * ex.exp_d + pc * pd * ex.exp_cd);
            const double dp = 0.25 * (pc * ex.d_exp_c + pd * ex.d_exp_d);
            dist.outcomes.push_back({{pc, pd}, p, dp});
        }
    }
    return dist;
}

/// Joint-parity Fisher information regrouped into even/odd photon-parity
/// branches:
///   sum over s = +-1 of (1/2) (1 + s<cd>) [d(<c> + s<d>)]^2
///                       / [(1 + s<cd>)^2 - (<c> + s<d>)^2].
/// Branches whose denominator drops below 1e-14 contribute nothing and are
/// counted as skipped.
inline FisherResult cfi_dp(const ParityExpectations& ex) {
    const OutcomeDistribution probs = dp_distribution(ex);
    for (const auto& o : probs.outcomes) {
        if (o.prob < -1e-9 || o.prob > 1.0 + 1e-9) {
            throw std::invalid_argument("cfi_dp: reconstructed probabilities leave [0, 1]");
        }
    }
    FisherResult out;
    out.method = FisherMethod::closed_form;
    for (double s : {+1.0, -1.0}) {
        const double weight = 1.0 + s * ex.exp_cd;
        const double dsum = ex.d_exp_c + s * ex.d_exp_d;
        const double esum = ex.exp_c + s * ex.exp_d;
        const double den = weight * weight - esum * esum;
        if (den < 1e-14) {
            ++out.skipped_terms;
            continue;
        }
        out.value += 0.5 * weight * dsum * dsum / den;
    }
    return out;
}

/// Single-port parity Fisher information (d<Pi_c>)^2 / (1 - <Pi_c>^2). At
/// phases where the fringe touches |<Pi_c>| = 1 with vanishing derivative the
/// value is reported as 0 with a skip count; a non-vanishing derivative there
/// is inconsistent and raises.
inline FisherResult cfi_sp(const ParityExpectations& ex) {
    FisherResult out;
    out.method = FisherMethod::closed_form;
    const double den = 1.0 - ex.exp_c * ex.exp_c;
    if (den < 1e-14) {
        if (std::abs(ex.d_exp_c) < 1e-9) {
            out.skipped_terms = 1;
            return out;
        }
        throw std::domain_error("cfi_sp: singular phase point with non-zero derivative");
    }
    out.value = ex.d_exp_c * ex.d_exp_c / den;
    return out;
}

}  // namespace qmetro
