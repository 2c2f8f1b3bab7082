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
#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <thread>

#include <Eigen/Eigenvalues>

#include "ddc/sdp.hpp"
#include "oracles.hpp"

namespace ddc::sdp {
namespace {

TEST(Solve, FixedScalarIsFeasible) {
    Problem p;
    const auto x = p.add_variable("x", 1, 1);
    p.add_psd(Affine::of(x));
    p.add_equality(Affine::of(x) - Matrix::Ones(1, 1));
    const auto r = solve(p);
    ASSERT_TRUE(has_values(r.status)) << r.diagnostic;
    EXPECT_NEAR(r.value(x)(0, 0), 1.0, 1e-7);
}

TEST(Solve, TraceOverIdentityLowerBound) {
    Problem p;
    const auto X = p.add_symmetric_variable("X", 2);
    p.add_psd(Affine::of(X) - Matrix::Identity(2, 2));
    p.minimize(Affine::of(X).trace());
    const auto r = solve(p);
    ASSERT_EQ(r.status, Status::Optimal) << r.diagnostic;
    EXPECT_NEAR(r.objective, 2.0, 1e-6);
    EXPECT_LT((r.value(X) - Matrix::Identity(2, 2)).norm(), 1e-5);
}

TEST(Solve, ContradictoryConstraintsAreInfeasible) {
    Problem p;
    const auto x = p.add_variable("x", 1, 1);
    p.add_psd(Affine::of(x));
    p.add_equality(Affine::of(x) + Matrix::Ones(1, 1));
    const auto r = solve(p);
    EXPECT_EQ(r.status, Status::Infeasible) << r.diagnostic;
    EXPECT_FALSE(has_values(r.status));
    EXPECT_THROW(r.value(x), std::exception);
}

TEST(Solve, MarginIsHonoured) {
    Problem p;
    const auto X = p.add_symmetric_variable("X", 3);
    p.add_psd(Affine::of(X), 0.25);
    p.minimize(Affine::of(X).trace());
    const auto r = solve(p);
    ASSERT_EQ(r.status, Status::Optimal) << r.diagnostic;
    EXPECT_NEAR(r.objective, 0.75, 1e-6);
}

TEST(Solve, SecondOrderCone) {
    // min t s.t. |(1, 2, 2)| <= t
    Problem p;
    const auto t = p.add_variable("t", 1, 1);
    Matrix c(3, 1);
    c << 1, 2, 2;
    p.add_soc(Affine::constant(c), Affine::of(t));
    p.minimize(Affine::of(t));
    const auto r = solve(p);
    ASSERT_EQ(r.status, Status::Optimal) << r.diagnostic;
    EXPECT_NEAR(r.value(t)(0, 0), 3.0, 1e-6);
}

TEST(Solve, MaximizeSenseReportsItsOwnObjective) {
    // max x s.t. 2 - x >= 0
    Problem p;
    const auto x = p.add_variable("x", 1, 1);
    p.add_psd(Affine::scalar(2.0) - Affine::of(x));
    p.maximize(Affine::of(x));
    const auto r = solve(p);
    ASSERT_EQ(r.status, Status::Optimal) << r.diagnostic;
    EXPECT_NEAR(r.objective, 2.0, 1e-6);
}

TEST(Solve, MinimumEigenvalueProgramMatchesEigensolver) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 2 + trial % 4;
        Matrix C = ddc::oracle::gaussian(n, n, rng);
        C = (0.5 * (C + C.transpose())).eval();
        Problem p;
        const auto X = p.add_symmetric_variable("X", n);
        p.add_psd(Affine::of(X));
        p.add_equality(Affine::of(X).trace() - Matrix::Ones(1, 1));
        // trace(C X) = sum_ij C_ij X_ij
        Affine obj = Affine::scalar(0.0);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) obj += C(i, j) * Affine::of(X).block(i, j, 1, 1);
        p.minimize(obj);
        const auto r = solve(p);
        ASSERT_EQ(r.status, Status::Optimal) << r.diagnostic;
        const double lambda = Eigen::SelfAdjointEigenSolver<Matrix>(C).eigenvalues()(0);
        EXPECT_NEAR(r.objective, lambda, 1e-6 * (1.0 + std::abs(lambda)));
        const double tol = SolveOptions{}.tolerance;
        EXPECT_GE(r.min_psd_slack, -10 * tol);
        EXPECT_LE(r.equality_residual, 10 * tol);
    }
}

TEST(Solve, ReentrantAcrossThreads) {
    auto build = [] {
        Problem p;
        const auto X = p.add_symmetric_variable("X", 3);
        Matrix C(3, 3);
        C << 2, 1, 0, 1, 3, 1, 0, 1, 4;
        p.add_psd(Affine::of(X) - C);
        p.minimize(Affine::of(X).trace());
        return p;
    };
    const Problem p = build();
    SolveReport a, b;
    std::thread t1([&] { a = solve(p); });
    std::thread t2([&] { b = solve(p); });
    t1.join();
    t2.join();
    ASSERT_EQ(a.status, Status::Optimal);
    EXPECT_EQ(a.y, b.y);
    EXPECT_NEAR(a.objective, 9.0, 1e-6);
}

TEST(Affine, AlgebraEvaluates) {
    Problem p;
    const auto X = p.add_variable("X", 2, 2);
    Vector y(4);
    y << 1, 2, 3, 4; // column-major [[1, 3], [2, 4]]
    Matrix L(2, 2);
    L << 1, 1, 0, 2;
    const Affine e = L * Affine::of(X) + Affine::of(X).transpose() - Matrix::Identity(2, 2);
    Matrix Xv(2, 2);
    Xv << 1, 3, 2, 4;
    EXPECT_LT((e.evaluate(y) - (L * Xv + Xv.transpose() - Matrix::Identity(2, 2))).norm(), 1e-15);
    const Affine g = Affine::grid({{Affine::of(X), Affine::constant(Matrix::Zero(2, 1))},
                                   {Affine::constant(Matrix::Ones(1, 2)), Affine::scalar(5.0)}});
    EXPECT_EQ(g.rows(), 3);
    EXPECT_EQ(g.cols(), 3);
    EXPECT_DOUBLE_EQ(g.evaluate(y)(2, 2), 5.0);
    EXPECT_DOUBLE_EQ(Affine::of(X).trace().evaluate(y)(0, 0), 5.0);
}

TEST(Problem, DumpListsEveryConstraint) {
    Problem p;
    const auto X = p.add_symmetric_variable("X", 2);
    p.add_psd(Affine::of(X), 0.0, "pos");
    p.add_equality(Affine::of(X).trace() - Matrix::Ones(1, 1), "unit");
    p.minimize(Affine::of(X).trace());
    const std::string d = p.dump();
    EXPECT_NE(d.find("scalars 3"), std::string::npos);
    EXPECT_NE(d.find("psd pos"), std::string::npos);
    EXPECT_NE(d.find("equality unit"), std::string::npos);
    EXPECT_NE(d.find("objective min"), std::string::npos);
}

TEST(SolveOptions, EnvironmentOverride) {
    ::setenv("DDC_SOLVER_TOL", "1e-6", 1);
    EXPECT_DOUBLE_EQ(SolveOptions::from_environment().tolerance, 1e-6);
    ::setenv("DDC_SOLVER_TOL", "garbage", 1);
    EXPECT_DOUBLE_EQ(SolveOptions::from_environment().tolerance, 1e-8);
    ::unsetenv("DDC_SOLVER_TOL");
    EXPECT_DOUBLE_EQ(SolveOptions::from_environment().tolerance, 1e-8);
}

} // namespace
} // namespace ddc::sdp
