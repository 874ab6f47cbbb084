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
 * Double-homodyne detection: an x-quadrature on one output port and a
 * p-quadrature on the other. Pulled back before the recombining beam
 * splitter, the joint quadrature basis expands over Fock pairs with
 * coefficients g_{k,l}(alpha) and, in polar outcome coordinates
 * alpha = r e^{i varphi},
 *   g_{k,l}(r, varphi) = g_{k,l}(r) e^{i (k-l) varphi}.
 * Contracting the structured state gives the outcome density
 *   p(r, varphi | phi) = A(r) + B(r) cos(delta * (phi - 2 varphi)),
 * so the Fisher integral runs over a radial Gauss-Legendre rule and a
 * uniform angular grid with analytic phi-derivatives throughout.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fisher.hpp"
#include "special_functions.hpp"
#include "states.hpp"

namespace qmetro {

namespace detail {

/// Gauss-Legendre nodes and weights on [a, b] by Newton iteration on the
/// Legendre recurrence.
inline void gauss_legendre(int count, double a, double b, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.assign(count, 0.0);
    weights.assign(count, 0.0);
    const int half = (count + 1) / 2;
    const double mid = 0.5 * (b + a);
    const double scale = 0.5 * (b - a);
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 0; j < count; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            dp = count * (z * p1 - p2) / (z * z - 1.0);
            const double z_old = z;
            z = z_old - p1 / dp;
            if (std::abs(z - z_old) < 1e-15) {
                break;
            }
        }
        nodes[i] = mid - scale * z;
        nodes[count - 1 - i] = mid + scale * z;
        weights[i] = 2.0 * scale / ((1.0 - z * z) * dp * dp);
        weights[count - 1 - i] = weights[i];
    }
}

}  // namespace detail

/// Radial Gauss-Legendre rule on [0, r_max] plus a uniform angular grid on
/// [0, 2pi). r_max is grown until the integrand envelope
/// exp(-r^2) r^(2*photons+1) falls below 1e-14 at the cut.
struct QuadratureGrid {
    std::vector<double> radial_nodes;
    std::vector<double> radial_weights;
    int angular_count = 0;
    double r_max = 0.0;
};

inline QuadratureGrid make_quadrature_grid(int total_photons, int radial = 200,
                                           int angular = 1024) {
    if (total_photons < 0) {
        throw std::invalid_argument("make_quadrature_grid: negative photon count");
    }
    if (radial < 64) {
        throw std::invalid_argument("make_quadrature_grid: need at least 64 radial nodes");
    }
    if (angular < 256) {
        throw std::invalid_argument("make_quadrature_grid: need at least 256 angular nodes");
    }
    QuadratureGrid grid;
    grid.angular_count = angular;
    grid.r_max = std::sqrt(static_cast<double>(total_photons)) + 6.0;
    while (std::exp(-grid.r_max * grid.r_max +
                    (2.0 * total_photons + 1.0) * std::log(grid.r_max)) >= 1e-14) {
        grid.r_max += 0.25;
    }
    detail::gauss_legendre(radial, 0.0, grid.r_max, grid.radial_nodes, grid.radial_weights);
    return grid;
}

/// Radial part of the pulled-back quadrature basis coefficient,
///   g_{k,l}(r) = e^{-r^2/2}/sqrt(pi) sqrt(l!/k!) r^{k-l} L_l^{(k-l)}(r^2)
/// for k >= l, and g_{k,l} = (-1)^{l-k} g_{l,k} otherwise. The factorial
/// ratio goes through log-factorials.
inline double homodyne_g(int k, int l, double r) {
    if (k < 0 || l < 0) {
        throw std::invalid_argument("homodyne_g: negative index");
    }
    if (k < l) {
        const double sign = ((l - k) % 2 == 0) ? 1.0 : -1.0;
        return sign * homodyne_g(l, k, r);
    }
    const double log_ratio = 0.5 * (log_factorial(l) - log_factorial(k));
    return std::exp(-0.5 * r * r + log_ratio) / std::sqrt(std::numbers::pi) * ipow(r, k - l) *
           laguerre(l, k - l, r * r);
}

namespace detail {

struct RadialProfile {
    double base = 0.0;  // A(r)
    double osc = 0.0;   // B(r)
};

inline RadialProfile dh_radial_profile(const LossyState& state, double r) {
    RadialProfile prof;
    for (const auto& [pair, weight] : state.diagonals) {
        const double g = homodyne_g(pair.ka, pair.kb, r);
        prof.base += weight * g * g;
    }
    for (const auto& coh : state.coherences) {
        prof.osc += 2.0 * coh.magnitude * homodyne_g(coh.bra.ka, coh.bra.kb, r) *
                    homodyne_g(coh.ket.ka, coh.ket.kb, r);
    }
    return prof;
}

}  // namespace detail

/// Outcome density and its analytic phi-derivative at polar coordinates
/// (r, varphi).
inline std::pair<double, double> dh_probability(const LossyState& state, double r, double varphi,
                                                double phi) {
    const auto prof = detail::dh_radial_profile(state, r);
    const int delta = state.delta();
    const double theta = delta * (phi - 2.0 * varphi);
    return {prof.base + prof.osc * std::cos(theta), -delta * prof.osc * std::sin(theta)};
}

/// Normalization integral of the outcome density over the grid; equals 1 for
/// a trace-one state up to quadrature truncation.
inline double dh_normalization(const LossyState& state, const QuadratureGrid& grid) {
    const int delta = state.delta();
    const double dw = 2.0 * std::numbers::pi / grid.angular_count;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
        const double r = grid.radial_nodes[i];
        const auto prof = detail::dh_radial_profile(state, r);
        double row = 0.0;
        for (int j = 0; j < grid.angular_count; ++j) {
            const double varphi = dw * j;
            row += prof.base + prof.osc * std::cos(delta * 2.0 * varphi);
        }
        acc += row * dw * r * grid.radial_weights[i];
    }
    return acc;
}

/// Double-homodyne Fisher information by quadrature of (dp/dphi)^2 / p * r
/// over the grid. Cells with p < 1e-14 are skipped and counted. The value is
/// recomputed on a doubled grid; the relative change is reported as the
/// quadrature error estimate and must stay within 1e-4.
inline FisherResult cfi_dh(const LossyState& state, double phi, const QuadratureGrid& grid) {
    const int delta = state.delta();
    const auto integrate = [&](const std::vector<double>& nodes,
                               const std::vector<double>& weights, int angular,
                               int& skipped) {
        const double dw = 2.0 * std::numbers::pi / angular;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const double r = nodes[i];
            const auto prof = detail::dh_radial_profile(state, r);
            double row = 0.0;
            for (int j = 0; j < angular; ++j) {
                const double theta = delta * (phi - 2.0 * dw * j);
                const double p = prof.base + prof.osc * std::cos(theta);
                if (p < 1e-14) {
                    ++skipped;
                    continue;
                }
                const double dp = -delta * prof.osc * std::sin(theta);
                row += dp * dp / p;
            }
            acc += row * dw * r * weights[i];
        }
        return acc;
    };

    int skipped_coarse = 0;
    const double coarse =
        integrate(grid.radial_nodes, grid.radial_weights, grid.angular_count, skipped_coarse);

    std::vector<double> fine_nodes;
    std::vector<double> fine_weights;
    detail::gauss_legendre(2 * static_cast<int>(grid.radial_nodes.size()), 0.0, grid.r_max,
                           fine_nodes, fine_weights);
    int skipped_fine = 0;
    const double fine = integrate(fine_nodes, fine_weights, 2 * grid.angular_count, skipped_fine);

    FisherResult out;
    out.method = FisherMethod::quadrature;
    out.value = fine;
    out.skipped_terms = skipped_fine;
    out.quad_error = std::abs(fine - coarse) / std::max(1.0, std::abs(fine));
    if (out.quad_error > 1e-4) {
        throw std::runtime_error("cfi_dh: quadrature did not converge under grid doubling");
    }
    return out;
}

}  // namespace qmetro
