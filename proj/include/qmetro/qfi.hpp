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
 * Quantum Fisher information for lossy path-entangled probes: the two-arm
 * upper bound, the exact one-arm value, the NOON closed form, and a dense
 * spectral-decomposition evaluator that serves as the oracle for all three.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "fisher.hpp"
#include "states.hpp"

namespace qmetro {

/// Upper bound on the QFI of |m::n> with losses in both arms:
///   2(m^2 + n^2) - 2 sum (m Bm Cm + n Bn Cn)^2 / (Bm Cm + Bn Cn),
/// summed over loss patterns. Terms whose denominator falls below 1e-15 are
/// dropped and counted.
inline FisherResult qfi_pefs_two_arm_bound(int m, int n, const LossSpec& loss) {
    if (!(m > n && n >= 0)) {
        throw std::invalid_argument("qfi_pefs_two_arm_bound: requires m > n >= 0");
    }
    const int xi = m + n;
    double subtracted = 0.0;
    int skipped = 0;
    for (int la = 0; la <= xi; ++la) {
        for (int lb = 0; lb <= xi - la; ++lb) {
            const double bm = b_coeff(m, la, lb, xi, loss) * c_indicator(m, la, lb, xi);
            const double bn = b_coeff(n, la, lb, xi, loss) * c_indicator(n, la, lb, xi);
            const double den = bm + bn;
            if (den < 1e-15) {
                ++skipped;
                continue;
            }
            const double num = m * bm + n * bn;
            subtracted += num * num / den;
        }
    }
    FisherResult out;
    out.value = std::max(0.0, 2.0 * (double(m) * m + double(n) * n) - 2.0 * subtracted);
    out.skipped_terms = skipped;
    out.method = FisherMethod::bound;
    return out;
}

/// Exact QFI of |m::n> when only arm a is lossy (the two-arm bound is
/// saturated there); the l_b > 0 branches all vanish, leaving a single sum.
inline FisherResult qfi_pefs_one_arm(int m, int n, double eta_a) {
    if (!(m > n && n >= 0)) {
        throw std::invalid_argument("qfi_pefs_one_arm: requires m > n >= 0");
    }
    const LossSpec loss = make_loss(eta_a, 1.0);
    const int xi = m + n;
    double subtracted = 0.0;
    int skipped = 0;
    for (int la = 0; la <= xi; ++la) {
        const double bm = b_coeff(m, la, 0, xi, loss) * c_indicator(m, la, 0, xi);
        const double bn = b_coeff(n, la, 0, xi, loss) * c_indicator(n, la, 0, xi);
        const double den = bm + bn;
        if (den < 1e-15) {
            ++skipped;
            continue;
        }
        const double num = m * bm + n * bn;
        subtracted += num * num / den;
    }
    FisherResult out;
    out.value = std::max(0.0, 2.0 * (double(m) * m + double(n) * n) - 2.0 * subtracted);
    out.skipped_terms = skipped;
    out.method = FisherMethod::closed_form;
    return out;
}

/// Exact QFI of a lossy NOON state, 2 N^2 eta_a^N eta_b^N / (eta_a^N + eta_b^N).
inline FisherResult qfi_noon(int photons, const LossSpec& loss) {
    if (photons < 1) {
        throw std::invalid_argument("qfi_noon: requires at least one photon");
    }
    const double pa = ipow(loss.eta_a, photons);
    const double pb = ipow(loss.eta_b, photons);
    FisherResult out;
    out.method = FisherMethod::closed_form;
    if (pa + pb <= 0.0) {
        out.skipped_terms = 1;  // all photons lost, no information left
        return out;
    }
    out.value = 2.0 * double(photons) * photons * pa * pb / (pa + pb);
    return out;
}

namespace detail {

/// Same NOON value through a different algebraic route: the phase-carrying
/// block is pure, so its contribution is the branch weight times four times
/// the generator variance of the normalized branch state.
inline double qfi_noon_branch_variance(int photons, const LossSpec& loss) {
    const NoonDirectSum block = noon_direct_sum(photons, loss);
    const double norm2 = block.amp_a * block.amp_a + block.amp_b * block.amp_b;
    if (norm2 <= 0.0) {
        return 0.0;
    }
    const double frac_a = block.amp_a * block.amp_a / norm2;
    const double variance = double(photons) * photons * frac_a * (1.0 - frac_a);
    return block.weight_xi * 4.0 * variance;
}

}  // namespace detail

/// Dense matrix of the structured state at a given phase, on the full
/// (xi+1) x (xi+1) Fock grid with index ka * (xi+1) + kb.
inline Eigen::MatrixXcd to_dense(const LossyState& state, double phi) {
    const int dim = state.total() + 1;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
    const auto index = [dim](FockPair p) { return p.ka * dim + p.kb; };
    for (const auto& [pair, weight] : state.diagonals) {
        rho(index(pair), index(pair)) = weight;
    }
    const std::complex<double> phase = std::polar(1.0, state.delta() * phi);
    for (const auto& coh : state.coherences) {
        rho(index(coh.bra), index(coh.ket)) = coh.magnitude * phase;
        rho(index(coh.ket), index(coh.bra)) = coh.magnitude * std::conj(phase);
    }
    return rho;
}

/// Mixed-state QFI by spectral decomposition:
///   F = sum_{ij: lambda_i + lambda_j > 1e-12} 2 |<i|d_phi rho|j>|^2 / (lambda_i + lambda_j),
/// with the derivative assembled analytically from the coherence frequencies.
/// Serves as the independent oracle for the closed forms above.
inline FisherResult qfi_bruteforce(const LossyState& state, double phi) {
    std::vector<FockPair> basis;
    basis.reserve(state.diagonals.size());
    for (const auto& [pair, weight] : state.diagonals) {
        basis.push_back(pair);
    }
    if (basis.size() > 256) {
        throw std::length_error("qfi_bruteforce: state dimension exceeds the oracle limit");
    }
    std::map<FockPair, int> index;
    for (int i = 0; i < static_cast<int>(basis.size()); ++i) {
        index[basis[i]] = i;
    }

    const int dim = static_cast<int>(basis.size());
    const int delta = state.delta();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    Eigen::MatrixXcd drho = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [pair, weight] : state.diagonals) {
        rho(index.at(pair), index.at(pair)) = weight;
    }
    const std::complex<double> phase = std::polar(1.0, delta * phi);
    const std::complex<double> i_unit(0.0, 1.0);
    for (const auto& coh : state.coherences) {
        const auto bi = index.find(coh.bra);
        const auto ki = index.find(coh.ket);
        if (bi == index.end() || ki == index.end()) {
            throw std::invalid_argument("qfi_bruteforce: coherence endpoint missing from diagonals");
        }
        rho(bi->second, ki->second) = coh.magnitude * phase;
        rho(ki->second, bi->second) = coh.magnitude * std::conj(phase);
        drho(bi->second, ki->second) = i_unit * double(delta) * coh.magnitude * phase;
        drho(ki->second, bi->second) = -i_unit * double(delta) * coh.magnitude * std::conj(phase);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("qfi_bruteforce: eigendecomposition failed");
    }
    const Eigen::VectorXd lambda = solver.eigenvalues();
    const Eigen::MatrixXcd transformed = solver.eigenvectors().adjoint() * drho * solver.eigenvectors();

    double value = 0.0;
    int skipped = 0;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const double pair_weight = lambda(i) + lambda(j);
            const double element = std::norm(transformed(i, j));
            if (pair_weight > 1e-12) {
                value += 2.0 * element / pair_weight;
            } else if (element > 1e-24) {
                ++skipped;
            }
        }
    }
    FisherResult out;
    out.value = value;
    out.skipped_terms = skipped;
    out.method = FisherMethod::brute_force;
    return out;
}

}  // namespace qmetro
