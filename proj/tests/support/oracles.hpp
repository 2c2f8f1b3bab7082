/*
 Copyright 2026 The ddc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef DDC_TESTS_ORACLES_HPP
#define DDC_TESTS_ORACLES_HPP

// Reference computations used to check the library. None of them call into
// the code under test except for plain data containers.

#include <cstdint>
#include <random>

#include "ddc/linalg.hpp"

namespace ddc::oracle {

/// LQR gain for u = -Kx by iterating the Riccati map from P = Qx.
Matrix riccati_gain(const Matrix& A, const Matrix& B, const Matrix& Qx, const Matrix& R, int max_iter = 200000,
                    double tol = 1e-13);

/// Monte-Carlo estimate of the squared H2 cost of x+ = Acl x + w, z = (Qx + K'RK)^(1/2)-weighted state.
double monte_carlo_h2_squared(const Matrix& Acl, const Matrix& weight, int rollouts, int length, std::uint64_t seed);

/// Largest singular value of the input-to-weighted-state map on [0, T] by power iteration on simulations.
double power_iteration_gain(const Matrix& A, const Matrix& B, const Matrix& W, Index T, int iterations,
                            std::uint64_t seed);

/// exp(M) by Taylor series with scaling and squaring.
Matrix taylor_expm(const Matrix& M);

/// Spectral radius by the Gelfand formula |M^k|^(1/k) with repeated squaring.
double gelfand_radius(const Matrix& M, int squarings = 40);

/// Rank by column-pivoted QR.
Index qr_rank(const Matrix& M, double rel_tol = 1e-8);

/// Plain loop x[k+1] = A x[k] + B u[k] from x[0] = x0.
Matrix step_simulate(const Matrix& A, const Matrix& B, const Matrix& u, const Vector& x0);

struct RandomSystem {
    Matrix A;
    Matrix B;
};

/// Random controllable pair with spectral radius of A in [0.3, 1.3].
RandomSystem random_controllable(Index n, Index m, std::mt19937_64& rng);

/// i.i.d. standard normal matrix.
Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng);

} // namespace ddc::oracle

#endif // DDC_TESTS_ORACLES_HPP
