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
#include "oracles.hpp"

#include <cmath>

#include <Eigen/QR>

namespace ddc::oracle {

Matrix riccati_gain(const Matrix& A, const Matrix& B, const Matrix& Qx, const Matrix& R, int max_iter, double tol) {
    Matrix P = Qx;
    Matrix K = Matrix::Zero(B.cols(), A.rows());
    for (int i = 0; i < max_iter; ++i) {
        const Matrix S = R + B.transpose() * P * B;
        K = S.ldlt().solve(B.transpose() * P * A);
        Matrix next = Qx + A.transpose() * P * A - A.transpose() * P * B * K;
        next = (0.5 * (next + next.transpose())).eval();
        const double change = (next - P).norm() / (1.0 + P.norm());
        P = next;
        if (change < tol) break;
    }
    return (R + B.transpose() * P * B).ldlt().solve(B.transpose() * P * A);
}

double monte_carlo_h2_squared(const Matrix& Acl, const Matrix& weight, int rollouts, int length,
                              std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const Index n = Acl.rows();
    // Impulse-free estimate: with x[0] = 0 and unit white noise, E z[L]'z[L] tends to the squared H2 norm.
    double acc = 0.0;
    Vector x(n), w(n);
    for (int r = 0; r < rollouts; ++r) {
        x.setZero();
        for (int k = 0; k < length; ++k) {
            for (Index i = 0; i < n; ++i) w(i) = normal(rng);
            x = Acl * x + w;
        }
        acc += x.dot(weight * x);
    }
    return acc / rollouts;
}

namespace {

// y = W x[1..T] stacked, x driven by u[0..T-1] from rest.
Vector forward(const Matrix& A, const Matrix& B, const Matrix& W, const Vector& u, Index T) {
    const Index n = A.rows();
    const Index m = B.cols();
    const Index p = W.rows();
    Vector x = Vector::Zero(n);
    Vector y(p * T);
    for (Index k = 0; k < T; ++k) {
        x = A * x + B * u.segment(k * m, m);
        y.segment(k * p, p) = W * x;
    }
    return y;
}

// Adjoint of `forward` by the backward costate recursion.
Vector adjoint(const Matrix& A, const Matrix& B, const Matrix& W, const Vector& y, Index T) {
    const Index n = A.rows();
    const Index m = B.cols();
    const Index p = W.rows();
    Vector lambda = Vector::Zero(n);
    Vector u(m * T);
    for (Index k = T - 1; k >= 0; --k) {
        lambda = A.transpose() * lambda + W.transpose() * y.segment(k * p, p);
        u.segment(k * m, m) = B.transpose() * lambda;
    }
    return u;
}

} // namespace

double power_iteration_gain(const Matrix& A, const Matrix& B, const Matrix& W, Index T, int iterations,
                            std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vector u(B.cols() * T);
    for (Index i = 0; i < u.size(); ++i) u(i) = normal(rng);
    u.normalize();
    double sigma = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const Vector v = adjoint(A, B, W, forward(A, B, W, u, T), T);
        const double nv = v.norm();
        if (nv == 0.0) return 0.0;
        sigma = std::sqrt(nv);
        u = v / nv;
    }
    return forward(A, B, W, u, T).norm();
}

Matrix taylor_expm(const Matrix& M) {
    const double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Matrix X = M / std::pow(2.0, s);
    Matrix term = Matrix::Identity(M.rows(), M.cols());
    Matrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * X / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

double gelfand_radius(const Matrix& M, int squarings) {
    // Track log of the scale to avoid overflow while squaring.
    Matrix P = M;
    double log_scale = 0.0;
    double exponent = 1.0;
    for (int i = 0; i < squarings; ++i) {
        const double nrm = P.norm();
        if (nrm == 0.0) return 0.0;
        P /= nrm;
        log_scale += std::log(nrm) / exponent;
        P = P * P;
        exponent *= 2.0;
    }
    const double nrm = P.norm();
    if (nrm == 0.0) return 0.0;
    return std::exp(log_scale + std::log(nrm) / exponent);
}

Index qr_rank(const Matrix& M, double rel_tol) {
    Eigen::ColPivHouseholderQR<Matrix> qr(M);
    const Matrix R = qr.matrixR().template triangularView<Eigen::Upper>();
    const Index d = std::min(R.rows(), R.cols());
    if (d == 0 || R(0, 0) == 0.0) return 0;
    Index rank = 0;
    for (Index i = 0; i < d; ++i)
        if (std::abs(R(i, i)) > rel_tol * std::abs(R(0, 0))) ++rank;
    return rank;
}

Matrix step_simulate(const Matrix& A, const Matrix& B, const Matrix& u, const Vector& x0) {
    Matrix x(A.rows(), u.cols() + 1);
    x.col(0) = x0;
    for (Index k = 0; k < u.cols(); ++k) {
        Vector next = Vector::Zero(A.rows());
        for (Index i = 0; i < A.rows(); ++i) {
            double s = 0.0;
            for (Index j = 0; j < A.cols(); ++j) s += A(i, j) * x(j, k);
            for (Index j = 0; j < B.cols(); ++j) s += B(i, j) * u(j, k);
            next(i) = s;
        }
        x.col(k + 1) = next;
    }
    return x;
}

Matrix gaussian(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix M(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) M(i, j) = normal(rng);
    return M;
}

RandomSystem random_controllable(Index n, Index m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> radius(0.3, 1.3);
    for (;;) {
        Matrix A = gaussian(n, n, rng);
        const double rho = gelfand_radius(A);
        if (rho == 0.0) continue;
        A *= radius(rng) / rho;
        const Matrix B = gaussian(n, m, rng);
        Matrix C(n, n * m);
        Matrix AkB = B;
        for (Index k = 0; k < n; ++k) {
            C.middleCols(k * m, m) = AkB;
            AkB = A * AkB;
        }
        if (qr_rank(C, 1e-6) == n) return {A, B};
    }
}

} // namespace ddc::oracle
