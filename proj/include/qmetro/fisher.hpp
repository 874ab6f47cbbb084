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
#include <stdexcept>
#include <string>

namespace qmetro {

enum class FisherMethod { closed_form, bound, brute_force, quadrature };

inline std::string to_string(FisherMethod m) {
    switch (m) {
        case FisherMethod::closed_form: return "closed_form";
        case FisherMethod::bound: return "bound";
        case FisherMethod::brute_force: return "brute_force";
        case FisherMethod::quadrature: return "quadrature";
    }
    return "unknown";
}

/// A Fisher-information value (radians^-2) together with numerical
/// diagnostics: how many near-null terms were dropped, how many dropped terms
/// still carried a non-negligible derivative (a singular-phase indicator),
/// and the relative change under grid doubling for quadrature results.
struct FisherResult {
    double value = 0.0;
    int skipped_terms = 0;
    int singular_terms = 0;
    double quad_error = 0.0;
    FisherMethod method = FisherMethod::closed_form;
};

/// Phase sensitivity 1/sqrt(reps * F) from the Cramer-Rao relation.
inline double sensitivity(const FisherResult& f, int repetitions) {
    if (repetitions < 1) {
        throw std::invalid_argument("sensitivity: repetitions must be positive");
    }
    if (!(f.value > 0.0)) {
        throw std::domain_error("sensitivity: Fisher information must be positive");
    }
    return 1.0 / std::sqrt(static_cast<double>(repetitions) * f.value);
}

}  // namespace qmetro
