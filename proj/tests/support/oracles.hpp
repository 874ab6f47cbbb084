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

// Dense-matrix oracles kept independent of the structured-state code paths:
// an explicit Kraus-sum loss channel, parity kernel contractions, and a
// matrix-exponential route to the beam-splitter rotation elements.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "qmetro/states.hpp"

namespace qmetro::testing {

using Matrix = Eigen::MatrixXcd;

inline int grid_index(int ka, int kb, int dim) { return ka * dim + kb; }

/// Pure two-mode probe (|m,n> + |n,m>)/sqrt(2) after the phase shift, as a
/// dense density matrix on the (xi+1)^2 grid.
inline Matrix dense_pefs_with_phase(int m, int n, double phi) {
    const int dim = m + n + 1;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim * dim);
    psi(grid_index(m, n, dim)) = std::polar(1.0 / std::sqrt(2.0), m * phi);
    psi(grid_index(n, m, dim)) = std::polar(1.0 / std::sqrt(2.0), n * phi);
    return psi * psi.adjoint();
}

/// Phase shift on mode a applied by conjugation: element (a,b),(c,d) picks up
/// exp(i phi (a - c)).
inline Matrix apply_phase(const Matrix& rho, int dim, double phi) {
    Matrix out = rho;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            for (int c = 0; c < dim; ++c) {
                for (int d = 0; d < dim; ++d) {
                    out(grid_index(a, b, dim), grid_index(c, d, dim)) *=
                        std::polar(1.0, phi * (a - c));
                }
            }
        }
    }
    return out;
}

/// Explicit Kraus-sum photon-loss channel on both modes. The truncation at
/// the input photon number is exact because loss only lowers photon counts.
inline Matrix apply_loss_channel(const Matrix& rho, int dim, const LossSpec& loss) {
    const auto amp = [](int n_in, int l, double eta) {
        return std::sqrt(binom(n_in, l) * ipow(eta, n_in - l) * ipow(1.0 - eta, l));
    };
    Matrix out = Matrix::Zero(dim * dim, dim * dim);
    for (int la = 0; la < dim; ++la) {
        for (int lb = 0; lb < dim; ++lb) {
            for (int a = la; a < dim; ++a) {
                for (int b = lb; b < dim; ++b) {
                    for (int c = la; c < dim; ++c) {
                        for (int d = lb; d < dim; ++d) {
                            const double k_left = amp(a, la, loss.eta_a) * amp(b, lb, loss.eta_b);
                            const double k_right = amp(c, la, loss.eta_a) * amp(d, lb, loss.eta_b);
                            out(grid_index(a - la, b - lb, dim), grid_index(c - la, d - lb, dim)) +=
                                k_left * k_right * rho(grid_index(a, b, dim), grid_index(c, d, dim));
                        }
                    }
                }
            }
        }
    }
    return out;
}

/// <swap>, <(-1)^N swap> and <(-1)^N> contractions of a dense state.
struct ParityKernelValues {
    double exp_c = 0.0;
    double exp_d = 0.0;
    double exp_cd = 0.0;
};

inline ParityKernelValues contract_parity_kernels(const Matrix& rho, int dim) {
    ParityKernelValues out;
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            const double sign = ((a + b) % 2 == 0) ? 1.0 : -1.0;
            const double swap_elem = rho(grid_index(a, b, dim), grid_index(b, a, dim)).real();
            out.exp_c += swap_elem;
            out.exp_d += sign * swap_elem;
            out.exp_cd += sign * rho(grid_index(a, b, dim), grid_index(a, b, dim)).real();
        }
    }
    return out;
}

/// Rotation elements of exp(-i (pi/2) Jy) on one photon-number sector via
/// eigendecomposition of the tridiagonal Jy matrix; rows and columns run over
/// mu = -j..j in steps of 1 (index i <-> two_mu = 2*i - two_j).
inline Eigen::MatrixXd wigner_matrix_exponential(int two_j) {
    const int dim = two_j + 1;
    const double j = 0.5 * two_j;
    Matrix jy = Matrix::Zero(dim, dim);
    const std::complex<double> i_unit(0.0, 1.0);
    for (int i = 0; i + 1 < dim; ++i) {
        const double mu = -j + i;
        const double ladder = std::sqrt(j * (j + 1.0) - mu * (mu + 1.0));
        jy(i + 1, i) = -0.5 * i_unit * ladder;  // (1/2i) J+ part
        jy(i, i + 1) = 0.5 * i_unit * ladder;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(jy);
    const Eigen::VectorXd lambda = solver.eigenvalues();
    Matrix diag = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        diag(i, i) = std::polar(1.0, -0.5 * std::acos(-1.0) * lambda(i));
    }
    const Matrix u = solver.eigenvectors() * diag * solver.eigenvectors().adjoint();
    return u.real();
}

}  // namespace qmetro::testing
