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

#include <cmath>
#include <random>

#include "ddc/error.hpp"
#include "ddc/experiments.hpp"
#include "ddc/synthesis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace ddc {
namespace {

HankelPair example1_clean() {
    return to_hankel(collect_dataset(example1_plant(), gen_pe_input(1, 16, 4, 7)));
}

TEST(StabilizingGain, FirstPlantCleanData) {
    const auto out = stabilizing_gain(example1_clean());
    ASSERT_TRUE(sdp::has_values(out.status)) << out.diagnostic;
    EXPECT_LT(oracle::gelfand_radius(example1_plant().closed_loop(out.K)), 1.0);
}

TEST(StabilizingGain, CertificateReproducesGain) {
    const auto h = example1_clean();
    const auto out = stabilizing_gain(h);
    EXPECT_LT((out.K * h.X0() * out.Q + h.U0() * out.Q).norm(), 1e-6);
    EXPECT_TRUE(std::isfinite(out.condition_number));
}

TEST(StabilizingGain, RandomPlantsAreStabilized) {
    std::mt19937_64 rng(100);
    for (int trial = 0; trial < 100; ++trial) {
        const Index n = 1 + trial % 4;
        const Index m = 1 + trial % 2;
        const auto rs = oracle::random_controllable(n, m, rng);
        const SystemRealization sys(rs.A, rs.B);
        const auto h = fixture::clean_hankel(sys, fixture::generous_horizon(n, m), trial);
        const auto out = stabilizing_gain(h);
        EXPECT_LT(oracle::gelfand_radius(sys.closed_loop(out.K)), 1.0) << "trial " << trial;
    }
}

TEST(StabilizingGain, ShortHorizonIsAPreconditionError) {
    const Matrix s = Matrix::Random(3, 6);
    const HankelPair h(s.leftCols(5), s.rightCols(5), Matrix::Random(1, 5));
    try {
        stabilizing_gain(h);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
}

TEST(StabilizingGain, GainIsInvariantToCertificateScaling) {
    const auto h = example1_clean();
    const auto out = stabilizing_gain(h);
    for (double alpha : {1e-3, 0.5, 7.0, 1e4})
        EXPECT_LT((gain_from_certificate(h, alpha * out.Q) - out.K).norm(), 1e-9 * (1.0 + out.K.norm()));
}

TEST(Feasibility, OwnGainIsFeasible) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rs = oracle::random_controllable(3, 1, rng);
        const SystemRealization sys(rs.A, rs.B);
        const auto h = fixture::clean_hankel(sys, 16, trial);
        const auto out = stabilizing_gain(h);
        const auto f = feasibility_check(out.K, h);
        EXPECT_TRUE(f.feasible()) << "trial " << trial << " margin " << f.margin << " " << f.diagnostic;
    }
}

TEST(Feasibility, CleanDataRejectsClearlyDestabilizingGains) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rs = oracle::random_controllable(3, 1, rng);
        const SystemRealization sys(rs.A, rs.B);
        const auto h = fixture::clean_hankel(sys, 16, trial);
        const Matrix K = fixture::unstable_gain(sys, rng);
        const auto f = feasibility_check(K, h);
        EXPECT_EQ(f.verdict, Verdict::Infeasible) << "trial " << trial << " margin " << f.margin;
    }
}

TEST(Feasibility, CertificateSatisfiesTheGainEquation) {
    const auto h = example1_clean();
    const auto out = stabilizing_gain(h);
    const auto f = feasibility_check(out.K, h);
    ASSERT_TRUE(f.feasible());
    EXPECT_LT((h.U0() * f.Q + out.K * h.X0() * f.Q).norm(), 1e-6 * (1.0 + f.Q.norm()));
    EXPECT_GT(f.margin, kFeasibilityMargin);
}

TEST(Feasibility, ZeroStateDataIsNotFeasible) {
    const HankelPair h(Matrix::Zero(3, 16), Matrix::Zero(3, 16), Matrix::Random(1, 16));
    try {
        const auto f = feasibility_check(Matrix::Zero(1, 3), h);
        EXPECT_NE(f.verdict, Verdict::Feasible);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NumericalFailure);
    }
}

TEST(Feasibility, VerdictNames) {
    EXPECT_STREQ(to_string(Verdict::Feasible), "feasible");
    EXPECT_STREQ(to_string(Verdict::Infeasible), "infeasible");
    EXPECT_STREQ(to_string(Verdict::Indeterminate), "indeterminate");
}

TEST(H2Gain, SecondPlantMatchesRiccatiOracle) {
    const auto sys = example2_plant();
    const auto w = PerformanceWeights::identity(3, 1);
    const auto h = fixture::clean_hankel(sys, 20, 7);
    const auto out = h2_gain(h, w);
    const Matrix K_ref = oracle::riccati_gain(sys.A(), sys.B(), w.Qx(), w.R());
    EXPECT_LT((out.K - K_ref).norm() / K_ref.norm(), 1e-3);
    // The objective is the squared cost of the gain it returns.
    const double J = h2_cost(sys, out.K, w);
    EXPECT_NEAR(out.objective, J * J, 1e-4 * J * J);
    EXPECT_NEAR(J, 58.6972, 1e-2);
}

TEST(H2Gain, RandomPlantsMatchRiccatiOracle) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 10; ++trial) {
        const Index n = 2 + trial % 3;
        const Index m = 1 + trial % 2;
        const auto rs = oracle::random_controllable(n, m, rng);
        const SystemRealization sys(rs.A, rs.B);
        const auto w = PerformanceWeights::identity(n, m);
        const auto out = h2_gain(fixture::clean_hankel(sys, fixture::generous_horizon(n, m), trial), w);
        const Matrix K_ref = oracle::riccati_gain(rs.A, rs.B, w.Qx(), w.R());
        EXPECT_LT((out.K - K_ref).norm() / std::max(1.0, K_ref.norm()), 1e-3) << "trial " << trial;
    }
}

TEST(H2Gain, ExpensiveInputShrinksTheGain) {
    Matrix A(2, 2);
    A << 0.6, 0.2, 0.0, 0.5;
    Matrix B(2, 1);
    B << 0.0, 1.0;
    const SystemRealization sys(A, B);
    const PerformanceWeights w(Matrix::Identity(2, 2), Matrix::Constant(1, 1, 1e6));
    const auto out = h2_gain(fixture::clean_hankel(sys, 16, 3), w);
    const Matrix K_ref = oracle::riccati_gain(A, B, w.Qx(), w.R());
    EXPECT_LT(out.K.norm(), 1e-4);
    EXPECT_LT((out.K - K_ref).norm(), 1e-5);
}

TEST(H2Gain, RankDeficientDataIsRejected) {
    Matrix X0 = Matrix::Zero(3, 20);
    EXPECT_THROW(h2_gain(HankelPair(X0, X0, Matrix::Random(1, 20)), PerformanceWeights::identity(3, 1)), Error);
}

TEST(RankCondition, CleanAndDegenerate) {
    EXPECT_TRUE(rank_condition(example1_clean()));
    EXPECT_FALSE(rank_condition(HankelPair(Matrix::Zero(3, 16), Matrix::Zero(3, 16), Matrix::Random(1, 16))));
}

} // namespace
} // namespace ddc
