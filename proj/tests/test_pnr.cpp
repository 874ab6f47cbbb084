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

#include "qmetro/pnr.hpp"
#include "qmetro/qfi.hpp"

using namespace qmetro;
using Catch::Approx;

TEST_CASE("photon-number distribution basics") {
    SECTION("single photon splits across the two ports") {
        const OutcomeDistribution dist =
            dpnr_distribution(evolve_lossy(Pefs{1, 0}, make_loss(1.0, 1.0)), 0.0);
        double p10 = 0.0, p01 = 0.0;
        for (const auto& o : dist.outcomes) {
            if (o.label == std::pair{1, 0}) p10 = o.prob;
            if (o.label == std::pair{0, 1}) p01 = o.prob;
        }
        CHECK(p10 + p01 == Approx(1.0).margin(1e-14));
    }
    SECTION("normalization and zero-sum derivative under loss") {
        const OutcomeDistribution dist =
            dpnr_distribution(evolve_lossy(Pefs{10, 4}, make_loss(0.7, 0.8)), 0.53);
        CHECK(dist.prob_sum() == Approx(1.0).margin(1e-10));
        CHECK(dist.dprob_sum() == Approx(0.0).margin(1e-10));
        for (const auto& o : dist.outcomes) {
            REQUIRE(o.prob >= -1e-14);
        }
    }
}

TEST_CASE("NOON closed form for photon-number detection") {
    SECTION("equal losses make the factor one at every phase") {
        const LossSpec loss = make_loss(0.9, 0.9);
        const double qfi = qfi_noon(6, loss).value;
        for (int i = 0; i < 20; ++i) {
            const double phi = (i + 0.5) * std::numbers::pi / (6.0 * 20.0);
            CHECK(cfi_noon_dpnr_closed(6, loss, phi).value == Approx(qfi).margin(1e-12));
        }
    }
    SECTION("the half-period phase is optimal for any losses") {
        for (const LossSpec& loss : {make_loss(0.6, 1.0), make_loss(0.85, 0.4)}) {
            const double phi = std::numbers::pi / (2.0 * 4.0);
            CHECK(cfi_noon_dpnr_closed(4, loss, phi).value ==
                  Approx(qfi_noon(4, loss).value).margin(1e-12));
        }
    }
    SECTION("matches the distribution-level value") {
        const LossSpec loss = make_loss(0.6, 1.0);
        const LossyState state = evolve_lossy(Noon{4}, loss);
        const double phi = 0.3;
        const double from_dist = cfi_discrete(dpnr_distribution(state, phi)).value;
        CHECK(cfi_noon_dpnr_closed(4, loss, phi).value == Approx(from_dist).margin(1e-9));
    }
    SECTION("distribution equality across sizes and random losses") {
        std::mt19937 rng(616);
        std::uniform_real_distribution<double> uni(0.2, 1.0);
        for (int n = 1; n <= 8; ++n) {
            const LossSpec loss = make_loss(uni(rng), uni(rng));
            const LossyState state = evolve_lossy(Noon{n}, loss);
            for (int i = 0; i < 6; ++i) {
                const double phi = (i + 0.5) * std::numbers::pi / (n * 6.0);
                const double from_dist = cfi_discrete(dpnr_distribution(state, phi)).value;
                const double closed = cfi_noon_dpnr_closed(n, loss, phi).value;
                REQUIRE(from_dist == Approx(closed).margin(1e-9));
            }
        }
    }
}

TEST_CASE("lossless wide probe reaches the ideal value") {
    const LossyState state = evolve_lossy(Pefs{10, 4}, make_loss(1.0, 1.0));
    for (double phi : {0.2345, 0.11, 0.49}) {
        CHECK(cfi_discrete(dpnr_distribution(state, phi)).value == Approx(36.0).margin(1e-8));
    }
}

TEST_CASE("joint photon counting dominates its marginals") {
    const LossyState state = evolve_lossy(Pefs{6, 2}, make_loss(0.8, 0.9));
    for (double phi : {0.21, 0.55}) {
        const OutcomeDistribution dist = dpnr_distribution(state, phi);
        const double joint = cfi_discrete(dist).value;
        CHECK(cfi_discrete(marginalize(dist, Port::c)).value <= joint + 1e-10);
        CHECK(cfi_discrete(marginalize(dist, Port::d)).value <= joint + 1e-10);
    }
}

TEST_CASE("recombiner orientation only shifts the phase origin") {
    SECTION("even photon-number difference: identical values") {
        const LossyState state = evolve_lossy(Pefs{6, 2}, make_loss(0.85, 0.7));
        const auto plain = detail::dpnr_profile(state, false);
        const auto flipped = detail::dpnr_profile(state, true);
        for (double phi : {0.17, 0.42, 0.77}) {
            const double a =
                cfi_discrete(dpnr_distribution_from_profile(plain, state.delta(), phi)).value;
            const double b =
                cfi_discrete(dpnr_distribution_from_profile(flipped, state.delta(), phi)).value;
            REQUIRE(a == Approx(b).margin(1e-10));
        }
    }
    SECTION("odd difference: values shift by half a fringe period") {
        const LossyState state = evolve_lossy(Pefs{2, 1}, make_loss(0.9, 0.75));
        const auto plain = detail::dpnr_profile(state, false);
        const auto flipped = detail::dpnr_profile(state, true);
        const double period = std::numbers::pi / state.delta();
        for (double phi : {0.3, 0.8, 1.4}) {
            const double a =
                cfi_discrete(dpnr_distribution_from_profile(plain, state.delta(), phi)).value;
            const double b = cfi_discrete(dpnr_distribution_from_profile(flipped, state.delta(),
                                                                         phi + period))
                                 .value;
            REQUIRE(a == Approx(b).margin(1e-10));
        }
    }
}
