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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "qmetro/homodyne.hpp"
#include "qmetro/parity.hpp"

using namespace qmetro;
using Catch::Approx;

TEST_CASE("quadrature basis coefficients") {
    SECTION("vacuum overlap") {
        for (double r : {0.0, 0.4, 1.7, 3.0}) {
            CHECK(homodyne_g(0, 0, r) ==
                  Approx(std::exp(-0.5 * r * r) / std::sqrt(std::numbers::pi)).epsilon(1e-14));
        }
    }
    SECTION("index-swap sign rule") {
        std::mt19937 rng(8);
        std::uniform_int_distribution<int> idx(0, 10);
        std::uniform_real_distribution<double> rad(0.05, 4.0);
        for (int trial = 0; trial < 100; ++trial) {
            const int k = idx(rng);
            const int l = idx(rng);
            const double r = rad(rng);
            const double sign = ((k - l) % 2 == 0) ? 1.0 : -1.0;
            REQUIRE(homodyne_g(l, k, r) == Approx(sign * homodyne_g(k, l, r)).margin(1e-13));
        }
    }
    SECTION("radial orthonormality within an angular class") {
        // pairs (k,l) and (k',l') with k-l = k'-l' mix under the angular
        // integral; their radial overlaps must be delta_{kk'}.
        const QuadratureGrid grid = make_quadrature_grid(8, 200, 256);
        const auto overlap = [&grid](int k1, int l1, int k2, int l2) {
            double acc = 0.0;
            for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
                const double r = grid.radial_nodes[i];
                acc += homodyne_g(k1, l1, r) * homodyne_g(k2, l2, r) * r * grid.radial_weights[i];
            }
            return 2.0 * std::numbers::pi * acc;
        };
        CHECK(overlap(0, 0, 0, 0) == Approx(1.0).margin(1e-12));
        CHECK(overlap(3, 1, 3, 1) == Approx(1.0).margin(1e-12));
        CHECK(overlap(3, 1, 4, 2) == Approx(0.0).margin(1e-12));
        CHECK(overlap(5, 0, 5, 0) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("grid construction") {
    CHECK_THROWS_AS(make_quadrature_grid(6, 32, 1024), std::invalid_argument);
    CHECK_THROWS_AS(make_quadrature_grid(6, 200, 128), std::invalid_argument);
    const QuadratureGrid grid = make_quadrature_grid(14);
    CHECK(grid.radial_nodes.size() == 200);
    // integrand envelope is below threshold at the radial cut
    CHECK(std::exp(-grid.r_max * grid.r_max) * std::pow(grid.r_max, 29.0) < 1e-14);
}

TEST_CASE("outcome density") {
    SECTION("lossless two-photon probe matches the explicit block expression") {
        const int n_ph = 2;
        const LossyState state = evolve_lossy(Noon{n_ph}, make_loss(1.0, 1.0));
        for (int i = 0; i < 10; ++i) {
            for (int j = 0; j < 10; ++j) {
                const double r = 0.3 + 0.35 * i;
                const double varphi = 2.0 * std::numbers::pi * j / 10.0;
                const double phi = 0.6;
                const double g = homodyne_g(n_ph, 0, r);
                const double expected =
                    g * g * (1.0 + std::cos(n_ph * (phi - 2.0 * varphi)));  // (-1)^2 = +1
                const auto [p, dp] = dh_probability(state, r, varphi, phi);
                REQUIRE(p == Approx(expected).margin(1e-13));
                REQUIRE(dp == Approx(-n_ph * g * g * std::sin(n_ph * (phi - 2.0 * varphi)))
                                  .margin(1e-13));
            }
        }
    }
    SECTION("density stays non-negative") {
        const LossyState state = evolve_lossy(Pefs{5, 2}, make_loss(0.8, 0.6));
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> rad(0.0, 8.0);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
        for (int trial = 0; trial < 200; ++trial) {
            const auto [p, dp] = dh_probability(state, rad(rng), ang(rng), 0.9);
            REQUIRE(p >= -1e-16);
        }
    }
    SECTION("normalization under loss") {
        const QuadratureGrid grid = make_quadrature_grid(6);
        CHECK(dh_normalization(evolve_lossy(Noon{6}, make_loss(0.9, 0.9)), grid) ==
              Approx(1.0).margin(1e-8));
        const QuadratureGrid grid31 = make_quadrature_grid(4);
        CHECK(dh_normalization(evolve_lossy(Pefs{3, 1}, make_loss(0.85, 0.95)), grid31) ==
              Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("double-homodyne Fisher information") {
    SECTION("lossless probes reach the ideal value") {
        const QuadratureGrid grid6 = make_quadrature_grid(6);
        const FisherResult f6 = cfi_dh(evolve_lossy(Noon{6}, make_loss(1.0, 1.0)), 0.37, grid6);
        CHECK(f6.value == Approx(36.0).epsilon(1e-4));
        const QuadratureGrid grid14 = make_quadrature_grid(14);
        const FisherResult f14 =
            cfi_dh(evolve_lossy(Pefs{10, 4}, make_loss(1.0, 1.0)), 0.37, grid14);
        CHECK(f14.value == Approx(36.0).epsilon(1e-4));
        CHECK(f14.quad_error <= 1e-4);
    }
    SECTION("angular integral agrees with its closed form") {
        // for p = A + B cos(theta): integral of sin^2/(A + B cos) over a
        // period is 2 pi (A - sqrt(A^2 - B^2)) / B^2
        const LossyState state = evolve_lossy(Pefs{4, 1}, make_loss(0.9, 0.9));
        const QuadratureGrid grid = make_quadrature_grid(5);
        const int delta = state.delta();
        double reference = 0.0;
        for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
            const double r = grid.radial_nodes[i];
            const auto [p0, unused] = dh_probability(state, r, 0.0, 0.0);
            const auto [ppi, unused2] =
                dh_probability(state, r, std::numbers::pi / (2.0 * delta), 0.0);
            const double a = 0.5 * (p0 + ppi);  // theta = 0 and pi samples
            const double b = 0.5 * (p0 - ppi);
            const double disc = std::max(a * a - b * b, 0.0);
            reference += grid.radial_weights[i] * r * delta * delta * 2.0 * std::numbers::pi *
                         (a - std::sqrt(disc));
        }
        const double quadrature = cfi_dh(state, 0.3, grid).value;
        CHECK(quadrature == Approx(reference).epsilon(1e-6));
    }
    SECTION("value does not depend on the phase") {
        const LossyState state = evolve_lossy(Noon{4}, make_loss(0.85, 0.95));
        const QuadratureGrid grid = make_quadrature_grid(4, 96, 512);
        double lo = 1e300, hi = -1e300;
        for (int i = 0; i < 6; ++i) {
            const double v = cfi_dh(state, 0.23 * i, grid).value;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi - lo <= 1e-6 * (1.0 + hi));
    }
    SECTION("shifting the angular origin by phi/2 leaves the value unchanged") {
        // the density depends on varphi only through phi - 2 varphi, so the
        // shifted integral is a relabeling of the same angular sum
        const LossyState state = evolve_lossy(Pefs{3, 1}, make_loss(0.9, 0.9));
        const QuadratureGrid grid = make_quadrature_grid(4, 96, 512);
        const double phi = 0.8;
        const double dw = 2.0 * std::numbers::pi / grid.angular_count;
        double plain = 0.0, shifted = 0.0;
        for (std::size_t i = 0; i < grid.radial_nodes.size(); ++i) {
            const double r = grid.radial_nodes[i];
            for (int j = 0; j < grid.angular_count; ++j) {
                for (int variant = 0; variant < 2; ++variant) {
                    const double varphi = dw * j + (variant == 1 ? 0.5 * phi : 0.0);
                    const auto [p, dp] = dh_probability(state, r, varphi, phi);
                    if (p < 1e-14) continue;
                    const double term = dp * dp / p * r * grid.radial_weights[i] * dw;
                    (variant == 0 ? plain : shifted) += term;
                }
            }
        }
        CHECK(plain == Approx(shifted).epsilon(1e-10));
    }
}
