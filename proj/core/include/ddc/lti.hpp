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
#ifndef DDC_LTI_HPP
#define DDC_LTI_HPP

#include "ddc/linalg.hpp"

namespace ddc {

/**
 * @brief Discrete-time state-space pair (A, B) of x[k+1] = A x[k] + B u[k].
 *
 * Validated on construction: A square, B with n rows, n, m >= 1, finite entries.
 */
class SystemRealization {
public:
    SystemRealization(Matrix A, Matrix B);

    const Matrix& A() const noexcept { return A_; }
    const Matrix& B() const noexcept { return B_; }
    Index n() const noexcept { return A_.rows(); }
    Index m() const noexcept { return B_.cols(); }

    /// Closed-loop matrix A - B K for the control law u = -K x.
    Matrix closed_loop(const Matrix& K) const;

private:
    Matrix A_;
    Matrix B_;
};

/**
 * @brief States x[0..T] and inputs u[0..T-1], one sample per column.
 */
struct StateTrajectory {
    Matrix states; ///< n x (T+1)
    Matrix inputs; ///< m x T

    Index horizon() const noexcept { return inputs.cols(); }
};

/// Quadratic performance weights: Qx symmetric PSD, R symmetric PD.
class PerformanceWeights {
public:
    PerformanceWeights(Matrix Qx, Matrix R);

    const Matrix& Qx() const noexcept { return Qx_; }
    const Matrix& R() const noexcept { return R_; }
    /// Symmetric square root of R.
    const Matrix& R_sqrt() const noexcept { return R_sqrt_; }

    static PerformanceWeights identity(Index n, Index m);

private:
    Matrix Qx_;
    Matrix R_;
    Matrix R_sqrt_;
};

/// Rolls x[k+1] = A x[k] + B u[k] forward from x0. `inputs` is m x T, T >= 1.
StateTrajectory simulate(const SystemRealization& sys, const Matrix& inputs, const Vector& x0);

/// Zero-order-hold discretization via the augmented matrix exponential.
SystemRealization zoh_discretize(const Matrix& Ac, const Matrix& Bc, double Ts);

/// Tustin map A = (I - Ts/2 Ac)^-1 (I + Ts/2 Ac), B = (I - Ts/2 Ac)^-1 Ts Bc.
SystemRealization bilinear_discretize(const Matrix& Ac, const Matrix& Bc, double Ts);

/// max |lambda_i(M)| over the complex spectrum.
double spectral_radius(const Matrix& M);

/// True when spectral_radius(M) < 1 - kSchurMargin.
bool is_schur(const Matrix& M);

/// Rank of [B, AB, ..., A^{n-1} B].
Index controllability_rank(const SystemRealization& sys);

/**
 * @brief Block lower-triangular map from stacked inputs u[0..T-1] to stacked
 * weighted states W x[1..T], with x[0] = 0.
 *
 * Block (i, j) for i >= j is W A^{i-j} B.
 */
Matrix impulse_response_operator(const SystemRealization& sys, const Matrix& W, Index T);

/**
 * @brief Finite-horizon l2 gain sup_u |W x|_{[0,T]} / |u|_{[0,T]} with x[0] = 0.
 *
 * Window convention: states x[1..T] against inputs u[0..T-1]; x[0] = 0 adds
 * nothing. Evaluated exactly as the largest singular value of
 * impulse_response_operator(). Throws NumericalFailure if the operator
 * overflows (wildly unstable systems at long horizons).
 */
double finite_horizon_l2_gain(const SystemRealization& sys, const Matrix& W, Index T);

/// Solves P = M P M^T + S for Schur-stable M.
Matrix solve_discrete_lyapunov(const Matrix& M, const Matrix& S);

/**
 * @brief Closed-loop H2 cost from unit-covariance process noise to
 * z = [Qx^{1/2} x; R^{1/2} u] under u = -K x.
 *
 * Returns sqrt(trace((Qx + K^T R K) P)) with P = (A-BK) P (A-BK)^T + I.
 * Returns +infinity when A - B K is not Schur.
 */
double h2_cost(const SystemRealization& sys, const Matrix& K, const PerformanceWeights& w);

} // namespace ddc

#endif // DDC_LTI_HPP
