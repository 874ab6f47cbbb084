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
 * High-level experiments: the even/odd superposed probe study, sensitivity
 * and Fisher-information sweeps over transmissivity or phase, curated figure
 * datasets, and the measurement-hierarchy report.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fisher.hpp"
#include "homodyne.hpp"
#include "parity.hpp"
#include "pnr.hpp"
#include "qfi.hpp"
#include "states.hpp"

namespace qmetro {

/// Parity expectations of the lossless superposition
/// sqrt(p)|Ne::0> + sqrt(1-p)|No::0>. The even and odd sectors are
/// orthogonal, so the fringes add with weights p and 1-p; the product
/// expectation is the mean photon-number parity 2p - 1.
inline ParityExpectations superposed_noon_parity(const SuperposedNoon& probe, double phi) {
    const double p = probe.weight_even;
    const double ce = std::cos(probe.n_even * phi);
    const double co = std::cos(probe.n_odd * phi);
    const double se = std::sin(probe.n_even * phi);
    const double so = std::sin(probe.n_odd * phi);
    ParityExpectations out;
    out.exp_c = p * ce + (1.0 - p) * co;
    out.exp_d = p * ce - (1.0 - p) * co;
    out.d_exp_c = -p * probe.n_even * se - (1.0 - p) * probe.n_odd * so;
    out.d_exp_d = -p * probe.n_even * se + (1.0 - p) * probe.n_odd * so;
    out.exp_cd = 2.0 * p - 1.0;
    return out;
}

struct SuperposedNoonCfi {
    FisherResult dp;
    FisherResult sp;
};

/// Joint- and single-parity Fisher information of the superposed probe. The
/// joint value is phase-independent, p*Ne^2 + (1-p)*No^2: each photon-parity
/// branch of the joint readout carries its own fringe at full visibility.
/// The single-port value is the plain fringe formula on <Pi_c>; its isolated
/// singular phases are reported through the diagnostic counter.
inline SuperposedNoonCfi superposed_noon_cfi(const SuperposedNoon& probe, double phi) {
    const double p = probe.weight_even;
    SuperposedNoonCfi out;
    out.dp.value = p * probe.n_even * probe.n_even + (1.0 - p) * probe.n_odd * probe.n_odd;
    out.dp.method = FisherMethod::closed_form;

    const ParityExpectations ex = superposed_noon_parity(probe, phi);
    out.sp.method = FisherMethod::closed_form;
    const double den = 1.0 - ex.exp_c * ex.exp_c;
    if (den < 1e-14) {
        out.sp.singular_terms = 1;
    } else {
        out.sp.value = ex.d_exp_c * ex.d_exp_c / den;
    }
    return out;
}

enum class Measurement { qfi_bound, dp, sp, dpnr, dh };

inline std::string to_string(Measurement m) {
    switch (m) {
        case Measurement::qfi_bound: return "qfi";
        case Measurement::dp: return "dp";
        case Measurement::sp: return "sp";
        case Measurement::dpnr: return "dpnr";
        case Measurement::dh: return "dh";
    }
    return "unknown";
}

enum class LossMode { both_arms, one_arm };

/// Grid sweep request: transmissivity grid (interpretation set by the loss
/// mode), phase grid (often a single value), and the measurements to report.
struct SweepSpec {
    ProbeSpec probe;
    LossMode mode = LossMode::both_arms;
    std::vector<double> eta_grid;
    std::vector<double> phi_grid;
    std::vector<Measurement> measurements;
    int repetitions = 1;
};

struct SweepRow {
    double eta = 0.0;
    double phi = 0.0;
    Measurement measurement = Measurement::qfi_bound;
    double fisher = 0.0;
    double sens = 0.0;
    std::string error;  // empty on success
};

namespace detail {

inline LossSpec loss_at(LossMode mode, double eta) {
    return mode == LossMode::both_arms ? make_loss(eta, eta) : make_loss(eta, 1.0);
}

inline FisherResult evaluate_measurement(const ProbeSpec& probe, const LossSpec& loss,
                                         double phi, Measurement meas) {
    if (std::holds_alternative<SuperposedNoon>(probe)) {
        const auto& sn = std::get<SuperposedNoon>(probe);
        if (loss.eta_a != 1.0 || loss.eta_b != 1.0) {
            throw std::invalid_argument("superposed probes are supported lossless only");
        }
        switch (meas) {
            case Measurement::dp: return superposed_noon_cfi(sn, phi).dp;
            case Measurement::sp: return superposed_noon_cfi(sn, phi).sp;
            default:
                throw std::invalid_argument("measurement unavailable for superposed probes");
        }
    }
    const auto [m, n] = pefs_parameters(probe);
    switch (meas) {
        case Measurement::qfi_bound:
            if (n == 0) {
                return qfi_noon(m, loss);
            }
            if (loss.eta_b == 1.0) {
                return qfi_pefs_one_arm(m, n, loss.eta_a);
            }
            return qfi_pefs_two_arm_bound(m, n, loss);
        case Measurement::dp:
            return cfi_dp(parity_expectations(probe, loss, phi));
        case Measurement::sp:
            return cfi_sp(parity_expectations(probe, loss, phi));
        case Measurement::dpnr:
            return cfi_discrete(dpnr_distribution(evolve_lossy(probe, loss), phi));
        case Measurement::dh:
            return cfi_dh(evolve_lossy(probe, loss), phi, make_quadrature_grid(m + n));
    }
    throw std::invalid_argument("unknown measurement");
}

inline void validate_grid(const std::vector<double>& grid, double lo, double hi,
                          const char* what) {
    if (grid.empty()) {
        throw std::invalid_argument(std::string(what) + " grid must not be empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < lo || grid[i] > hi) {
            throw std::invalid_argument(std::string(what) + " grid leaves its domain");
        }
        if (i > 0 && grid[i] <= grid[i - 1]) {
            throw std::invalid_argument(std::string(what) + " grid must be strictly increasing");
        }
    }
}

}  // namespace detail

/// Runs the sweep with one row per (eta, phi, measurement), ordered
/// grid-major and measurement-minor. Rows that fail carry the message in the
/// error column instead of aborting the sweep.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.repetitions < 1) {
        throw std::invalid_argument("run_sweep: repetitions must be positive");
    }
    if (spec.measurements.empty()) {
        throw std::invalid_argument("run_sweep: no measurements requested");
    }
    detail::validate_grid(spec.eta_grid, 0.0, 1.0, "eta");
    if (spec.phi_grid.empty()) {
        throw std::invalid_argument("run_sweep: phi grid must not be empty");
    }
    std::vector<SweepRow> rows;
    rows.reserve(spec.eta_grid.size() * spec.phi_grid.size() * spec.measurements.size());
    for (double eta : spec.eta_grid) {
        for (double phi : spec.phi_grid) {
            for (Measurement meas : spec.measurements) {
                SweepRow row;
                row.eta = eta;
                row.phi = phi;
                row.measurement = meas;
                try {
                    const FisherResult f =
                        detail::evaluate_measurement(spec.probe, detail::loss_at(spec.mode, eta),
                                                     phi, meas);
                    row.fisher = f.value;
                    row.sens = sensitivity(f, spec.repetitions);
                } catch (const std::exception& e) {
                    row.fisher = std::nan("");
                    row.sens = std::nan("");
                    row.error = e.what();
                }
                rows.push_back(row);
            }
        }
    }
    return rows;
}

/// Largest photon-number-resolving Fisher information over a uniform phase
/// grid covering one full period [0, pi/delta]. Used where the best readout
/// phase of a wide probe has no closed form.
inline double dpnr_cfi_max_over_phi(const LossyState& state, int grid_points = 721) {
    if (grid_points < 2) {
        throw std::invalid_argument("dpnr_cfi_max_over_phi: need at least two grid points");
    }
    const auto profile = dpnr_profile(state);
    const int delta = state.delta();
    const double period = std::numbers::pi / delta;
    double best = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double phi = period * i / (grid_points - 1);
        const FisherResult f =
            cfi_discrete(dpnr_distribution_from_profile(profile, delta, phi));
        best = std::max(best, f.value);
    }
    return best;
}

struct HierarchyEntry {
    Measurement measurement = Measurement::dh;
    double cfi = 0.0;
};

/// Ranking of the three double-port measurements at one operating point,
/// ascending in Fisher information, plus whether the strict ordering
/// DH < DP < DPNR holds there.
struct HierarchyReport {
    std::array<HierarchyEntry, 3> ranking;
    bool expected_order_holds = false;
};

inline HierarchyReport hierarchy_report(const ProbeSpec& probe, const LossSpec& loss,
                                        double phi) {
    const double dh =
        detail::evaluate_measurement(probe, loss, phi, Measurement::dh).value;
    const double dp =
        detail::evaluate_measurement(probe, loss, phi, Measurement::dp).value;
    const double dpnr =
        detail::evaluate_measurement(probe, loss, phi, Measurement::dpnr).value;
    HierarchyReport report;
    report.ranking = {HierarchyEntry{Measurement::dh, dh}, HierarchyEntry{Measurement::dp, dp},
                      HierarchyEntry{Measurement::dpnr, dpnr}};
    std::sort(report.ranking.begin(), report.ranking.end(),
              [](const HierarchyEntry& a, const HierarchyEntry& b) { return a.cfi < b.cfi; });
    report.expected_order_holds = dh < dp && dp < dpnr;
    return report;
}

}  // namespace qmetro
