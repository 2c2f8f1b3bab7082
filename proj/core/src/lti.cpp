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
#include "ddc/lti.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "ddc/error.hpp"

namespace ddc {

namespace {

void require_square(const Matrix& M, const char* name) {
    if (M.rows() != M.cols() || M.rows() == 0)
        throw_invalid(std::string(name) + " must be a non-empty square matrix");
}

} // namespace

SystemRealization::SystemRealization(Matrix A, Matrix B) : A_(std::move(A)), B_(std::move(B)) {
    require_square(A_, "A");
    if (B_.rows() != A_.rows()) throw_invalid("B must have as many rows as A");
    if (B_.cols() < 1) throw_invalid("B must have at least one column");
    if (!all_finite(A_) || !all_finite(B_)) throw_invalid("system matrices must be finite");
}

Matrix SystemRealization::closed_loop(const Matrix& K) const {
    if (K.rows() != m() || K.cols() != n()) throw_invalid("gain K must be m x n");
    return A_ - B_ * K;
}

PerformanceWeights::PerformanceWeights(Matrix Qx, Matrix R) : Qx_(std::move(Qx)), R_(std::move(R)) {
    require_square(Qx_, "Qx");
    require_square(R_, "R");
    constexpr double tol = 1e-10;
    if (!Qx_.isApprox(Qx_.transpose(), tol) || !R_.isApprox(R_.transpose(), tol))
        throw_invalid("performance weights must be symmetric");
    Eigen::SelfAdjointEigenSolver<Matrix> qes(Qx_);
    if (qes.eigenvalues()(0) < -tol * std::max(1.0, Qx_.norm()))
        throw_invalid("Qx must be positive semidefinite");
    Eigen::SelfAdjointEigenSolver<Matrix> res(R_);
    if (res.eigenvalues()(0) <= tol * std::max(1.0, R_.norm()))
        throw_invalid("R must be positive definite");
    R_sqrt_ = res.operatorSqrt();
}

PerformanceWeights PerformanceWeights::identity(Index n, Index m) {
    return {Matrix::Identity(n, n), Matrix::Identity(m, m)};
}

StateTrajectory simulate(const SystemRealization& sys, const Matrix& inputs, const Vector& x0) {
    if (inputs.cols() < 1) throw_invalid("input sequence must be nonempty");
    if (inputs.rows() != sys.m()) throw_invalid("input dimension does not match B");
    if (x0.size() != sys.n()) throw_invalid("initial state dimension does not match A");
    StateTrajectory traj;
    traj.inputs = inputs;
    traj.states.resize(sys.n(), inputs.cols() + 1);
    traj.states.col(0) = x0;
    for (Index k = 0; k < inputs.cols(); ++k)
        traj.states.col(k + 1) = sys.A() * traj.states.col(k) + sys.B() * inputs.col(k);
    return traj;
}

SystemRealization zoh_discretize(const Matrix& Ac, const Matrix& Bc, double Ts) {
    if (!(Ts > 0.0)) throw_invalid("sampling time must be positive");
    require_square(Ac, "Ac");
    if (Bc.rows() != Ac.rows()) throw_invalid("Bc must have as many rows as Ac");
    const Index n = Ac.rows();
    const Index m = Bc.cols();
    // exp([Ac Bc; 0 0] Ts) = [Ad Bd; 0 I]
    Matrix M = Matrix::Zero(n + m, n + m);
    M.topLeftCorner(n, n) = Ac * Ts;
    M.topRightCorner(n, m) = Bc * Ts;
    const Matrix phi = M.exp();
    return {phi.topLeftCorner(n, n), phi.topRightCorner(n, m)};
}

SystemRealization bilinear_discretize(const Matrix& Ac, const Matrix& Bc, double Ts) {
    if (!(Ts > 0.0)) throw_invalid("sampling time must be positive");
    require_square(Ac, "Ac");
    if (Bc.rows() != Ac.rows()) throw_invalid("Bc must have as many rows as Ac");
    const Index n = Ac.rows();
    const Matrix I = Matrix::Identity(n, n);
    const Matrix left = I - 0.5 * Ts * Ac;
    Eigen::FullPivLU<Matrix> lu(left);
    if (!lu.isInvertible() || condition_number(left) > 1e12)
        throw_numerical("I - Ts/2 Ac is singular; bilinear map undefined");
    return {lu.solve(I + 0.5 * Ts * Ac), lu.solve(Ts * Bc)};
}

double spectral_radius(const Matrix& M) {
    require_square(M, "matrix");
    if (!all_finite(M)) throw_invalid("matrix has non-finite entries");
    Eigen::EigenSolver<Matrix> es(M, false);
    if (es.info() != Eigen::Success) throw_numerical("eigenvalue iteration did not converge");
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

bool is_schur(const Matrix& M) { return spectral_radius(M) < 1.0 - kSchurMargin; }

Index controllability_rank(const SystemRealization& sys) {
    const Index n = sys.n();
    const Index m = sys.m();
    Matrix ctrb(n, n * m);
    Matrix block = sys.B();
    for (Index i = 0; i < n; ++i) {
        ctrb.middleCols(i * m, m) = block;
        block = sys.A() * block;
    }
    return numerical_rank(ctrb);
}

Matrix impulse_response_operator(const SystemRealization& sys, const Matrix& W, Index T) {
    if (T < 1) throw_invalid("horizon must be at least 1");
    if (W.cols() != sys.n()) throw_invalid("weight matrix must have n columns");
    const Index p = W.rows();
    const Index m = sys.m();
    // Markov parameters W A^k B, k = 0..T-1.
    std::vector<Matrix> markov;
    markov.reserve(static_cast<std::size_t>(T));
    Matrix AkB = sys.B();
    for (Index k = 0; k < T; ++k) {
        markov.push_back(W * AkB);
        AkB = sys.A() * AkB;
    }
    Matrix G = Matrix::Zero(p * T, m * T);
    for (Index i = 0; i < T; ++i)
        for (Index j = 0; j <= i; ++j)
            G.block(i * p, j * m, p, m) = markov[static_cast<std::size_t>(i - j)];
    return G;
}

double finite_horizon_l2_gain(const SystemRealization& sys, const Matrix& W, Index T) {
    const Matrix G = impulse_response_operator(sys, W, T);
    if (!all_finite(G))
        throw_numerical("impulse response overflowed over horizon " + std::to_string(T) +
                        " (spectral radius " + std::to_string(spectral_radius(sys.A())) + ")");
    const Vector sv = Eigen::BDCSVD<Matrix>(G).singularValues();
    const double gain = sv.size() > 0 ? sv(0) : 0.0;
    if (!std::isfinite(gain)) throw_numerical("l2 gain is not finite");
    return gain;
}

Matrix solve_discrete_lyapunov(const Matrix& M, const Matrix& S) {
    require_square(M, "M");
    if (S.rows() != M.rows() || S.cols() != M.cols()) throw_invalid("S must match M");
    const Index n = M.rows();
    // (I - M kron M) vec(P) = vec(S)
    const Matrix lhs = Matrix::Identity(n * n, n * n) - Eigen::kroneckerProduct(M, M).eval();
    Eigen::PartialPivLU<Matrix> lu(lhs);
    const Vector s = Eigen::Map<const Vector>(S.data(), n * n);
    const Vector p = lu.solve(s);
    if (!p.allFinite() || (lhs * p - s).norm() > 1e-8 * (1.0 + s.norm()) * (1.0 + p.norm()))
        throw_numerical("discrete Lyapunov solve failed");
    Matrix P = Eigen::Map<const Matrix>(p.data(), n, n);
    return 0.5 * (P + P.transpose());
}

double h2_cost(const SystemRealization& sys, const Matrix& K, const PerformanceWeights& w) {
    if (w.Qx().rows() != sys.n() || w.R().rows() != sys.m())
        throw_invalid("weights do not match system dimensions");
    const Matrix closed = sys.closed_loop(K);
    if (!is_schur(closed)) return std::numeric_limits<double>::infinity();
    const Matrix P = solve_discrete_lyapunov(closed, Matrix::Identity(sys.n(), sys.n()));
    const double j2 = ((w.Qx() + K.transpose() * w.R() * K) * P).trace();
    return std::sqrt(std::max(j2, 0.0));
}

} // namespace ddc
