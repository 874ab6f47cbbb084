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

#pragma once

#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "fisher.hpp"

namespace qmetro {

/// Discrete measurement-outcome distribution over labelled pairs, carrying
/// the probability and its analytic phase derivative per outcome.
struct OutcomeDistribution {
    struct Outcome {
        std::pair<int, int> label;
        double prob = 0.0;
        double dprob = 0.0;
    };
    std::vector<Outcome> outcomes;

    double prob_sum() const {
        double acc = 0.0;
        for (const auto& o : outcomes) acc += o.prob;
        return acc;
    }
    double dprob_sum() const {
        double acc = 0.0;
        for (const auto& o : outcomes) acc += o.dprob;
        return acc;
    }
};

/// Fisher information sum (dp/dphi)^2 / p over the distribution. Outcomes
/// with p < 1e-12 are dropped: silently-counted when their derivative is
/// negligible, flagged as singular-phase diagnostics otherwise.
inline FisherResult cfi_discrete(const OutcomeDistribution& dist) {
    FisherResult out;
    out.method = FisherMethod::closed_form;
    for (const auto& o : dist.outcomes) {
        if (o.prob >= 1e-12) {
            out.value += o.dprob * o.dprob / o.prob;
        } else if (std::abs(o.dprob) < 1e-9) {
            ++out.skipped_terms;
        } else {
            ++out.singular_terms;
        }
    }
    return out;
}

enum class Port { c, d };

/// Marginal over one port: probabilities and derivatives summed over the
/// discarded coordinate.
inline OutcomeDistribution marginalize(const OutcomeDistribution& dist, Port keep) {
    std::map<int, std::pair<double, double>> acc;
    for (const auto& o : dist.outcomes) {
        const int key = keep == Port::c ? o.label.first : o.label.second;
        acc[key].first += o.prob;
        acc[key].second += o.dprob;
    }
    OutcomeDistribution out;
    for (const auto& [key, pd] : acc) {
        out.outcomes.push_back({{key, 0}, pd.first, pd.second});
    }
    return out;
}

}  // namespace qmetro
