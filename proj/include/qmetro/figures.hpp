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
 * Curated figure datasets in wide (pivoted) form.
 *
 *  fig2a  sensitivity vs eta, losses in both arms, |6::0> and |10::4>
 *  fig2b  same with loss in one arm only
 *  fig3a  Fisher information vs phi for |6::0> at eta in {1, 0.98, 0.9}
 *  fig3b  same for |10::4>
 *  fig5   joint vs single parity for the (|4::0>+|3::0>)/sqrt(2) probe
 *
 * Phase grids use midpoints so the isolated singular phases of the parity
 * fringes never land on a sample. The photon-number column for the wide
 * probe reports the best Fisher information over a 721-point phase grid,
 * since its optimal readout phase has no closed form.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "io.hpp"
#include "scenarios.hpp"

namespace qmetro {

namespace detail {

inline DataTable figure_sensitivity_vs_eta(const std::string& name, LossMode mode) {
    const double phi = std::numbers::pi / 12.0;  // pi / (2 delta) for delta = 6
    const Noon noon{6};
    const Pefs pefs{10, 4};

    DataTable table;
    table.metadata = {{"figure", name},
                      {"probes", "noon:6|pefs:10,4"},
                      {"loss", mode == LossMode::both_arms ? "both_arms" : "one_arm"},
                      {"phi", "pi/12"},
                      {"dpnr_pefs", "max_over_721_point_phi_grid"},
                      {"reps", "1"},
                      {"version", kVersion}};
    table.columns = {"eta",          "dphi_bound_noon6", "dphi_bound_pefs10_4",
                     "dphi_dp_noon6", "dphi_dp_pefs10_4", "dphi_dpnr_noon6",
                     "dphi_dpnr_pefs10_4"};

    for (int i = 0; i <= 50; ++i) {
        const double eta = 0.5 + 0.01 * i;
        const LossSpec loss = loss_at(mode, eta);
        const auto dphi = [](double fisher) { return 1.0 / std::sqrt(fisher); };

        const double bound_noon = qfi_noon(6, loss).value;
        const double bound_pefs = (mode == LossMode::one_arm)
                                      ? qfi_pefs_one_arm(10, 4, loss.eta_a).value
                                      : qfi_pefs_two_arm_bound(10, 4, loss).value;
        const double dp_noon = cfi_dp(parity_expectations(noon, loss, phi)).value;
        const double dp_pefs = cfi_dp(parity_expectations(pefs, loss, phi)).value;
        const double dpnr_noon =
            cfi_discrete(dpnr_distribution(evolve_lossy(noon, loss), phi)).value;
        const double dpnr_pefs = dpnr_cfi_max_over_phi(evolve_lossy(pefs, loss));

        table.rows.push_back({eta, dphi(bound_noon), dphi(bound_pefs), dphi(dp_noon),
                              dphi(dp_pefs), dphi(dpnr_noon), dphi(dpnr_pefs)});
    }
    return table;
}

inline DataTable figure_cfi_vs_phi(const std::string& name, const ProbeSpec& probe,
                                   const std::string& probe_label) {
    const auto [m, n] = pefs_parameters(probe);
    const int delta = m - n;
    const double period = std::numbers::pi / delta;
    const std::array<double, 3> etas = {1.0, 0.98, 0.9};
    const std::array<const char*, 3> eta_tags = {"1.00", "0.98", "0.90"};

    DataTable table;
    table.metadata = {{"figure", name},     {"probe", probe_label},
                      {"loss", "both_arms"}, {"phi", "120_midpoints_on_(0,pi/delta)"},
                      {"dh", "phase_invariant_evaluated_once_per_eta"},
                      {"reps", "1"},         {"version", kVersion}};
    table.columns = {"phi"};
    for (const char* tag : eta_tags) {
        table.columns.push_back(std::string("fc_dp_eta") + tag);
        table.columns.push_back(std::string("fc_sp_eta") + tag);
        table.columns.push_back(std::string("fc_dh_eta") + tag);
    }

    // the homodyne value does not depend on phi, so it is computed once per
    // transmissivity at a generic phase
    const QuadratureGrid grid = make_quadrature_grid(m + n);
    std::array<double, 3> dh_values{};
    for (std::size_t e = 0; e < etas.size(); ++e) {
        const LossSpec loss = make_loss(etas[e], etas[e]);
        dh_values[e] = cfi_dh(evolve_lossy(probe, loss), 0.2345, grid).value;
    }

    for (int i = 0; i < 120; ++i) {
        const double phi = period * (i + 0.5) / 120.0;
        std::vector<DataTable::Cell> row = {phi};
        for (std::size_t e = 0; e < etas.size(); ++e) {
            const LossSpec loss = make_loss(etas[e], etas[e]);
            const ParityExpectations ex = parity_expectations(probe, loss, phi);
            row.push_back(cfi_dp(ex).value);
            row.push_back(cfi_sp(ex).value);
            row.push_back(dh_values[e]);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

inline DataTable figure_superposed_parity(const std::string& name) {
    const SuperposedNoon probe = make_superposed_noon(4, 3, 0.5);
    DataTable table;
    table.metadata = {{"figure", name},
                      {"probe", "snoon:4,3,0.5"},
                      {"loss", "lossless"},
                      {"phi", "200_midpoints_on_(0,pi]"},
                      {"reps", "1"},
                      {"version", kVersion}};
    table.columns = {"phi", "fc_dp", "fc_sp"};
    for (int i = 1; i <= 200; ++i) {
        const double phi = std::numbers::pi * (i - 0.5) / 200.0;
        const SuperposedNoonCfi cfi = superposed_noon_cfi(probe, phi);
        table.rows.push_back({phi, cfi.dp.value, cfi.sp.value});
    }
    return table;
}

}  // namespace detail

/// Builds the named dataset; unknown names raise.
inline DataTable figure_dataset(const std::string& name) {
    if (name == "fig2a") {
        return detail::figure_sensitivity_vs_eta(name, LossMode::both_arms);
    }
    if (name == "fig2b") {
        return detail::figure_sensitivity_vs_eta(name, LossMode::one_arm);
    }
    if (name == "fig3a") {
        return detail::figure_cfi_vs_phi(name, Noon{6}, "noon:6");
    }
    if (name == "fig3b") {
        return detail::figure_cfi_vs_phi(name, Pefs{10, 4}, "pefs:10,4");
    }
    if (name == "fig5") {
        return detail::figure_superposed_parity(name);
    }
    throw std::invalid_argument("figure_dataset: unknown figure name '" + name + "'");
}

}  // namespace qmetro
