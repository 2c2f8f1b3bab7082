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

#include "ddc/attack_destab.hpp"
#include "ddc/error.hpp"
#include "ddc/experiments.hpp"
#include "ddc/synthesis.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

namespace ddc {
namespace {

StateTrajectory example1_truth() {
    return simulate(example1_plant(), gen_pe_input(1, 16, 4, 7), Vector::Zero(3));
}

TEST(FakeSystem, PrintedMatricesAtUnitKappa) {
    const auto spec = build_fake_system(example1_target_gain(), 1.0);
    Matrix A(3, 3);
    A << 0, 1, 0, 0, 0, 1, -0.01, -2.67, 3.27;
    Matrix B(3, 1);
    B << 0, 0, 1;
    EXPECT_EQ(spec.realization.A(), A);
    EXPECT_EQ(spec.realization.B(), B);
}

TEST(FakeSystem, SingleInputRowIsTheGain) {
    const Matrix K = example1_target_gain();
    EXPECT_EQ(Matrix(build_fake_system(K, 0.3).V), K);
}

TEST(FakeSystem, RowIsColumnAverage) {
    Matrix K(2, 3);
    K << 1, 2, 3, 3, 0, -1;
    Eigen::RowVectorXd expected(3);
    expected << 2, 1, 1;
    EXPECT_LT((build_fake_system(K, 1.0).V - expected).norm(), 1e-15);
}

TEST(FakeSystem, TargetGainMakesItNilpotent) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 2 + trial % 4;
        const Index m = 1 + trial % 3;
        const Matrix K = oracle::gaussian(m, n, rng);
        const double kappa = 0.05 + 0.95 * (trial / 19.0);
        const auto spec = build_fake_system(K, kappa);
        const Matrix M = spec.realization.closed_loop(K);
        const Matrix lower = M.triangularView<Eigen::Lower>();
        EXPECT_LT(lower.cwiseAbs().maxCoeff(), 1e-12);
        // Eigenvalues of a perturbed nilpotent matrix move like eps^(1/n); check M^n instead.
        Matrix P = Matrix::Identity(n, n);
        for (Index k = 0; k < n; ++k) P = P * M;
        EXPECT_LT(P.norm(), 1e-10 * std::pow(1.0 + M.norm(), static_cast<double>(n)));
        EXPECT_EQ(controllability_rank(spec.realization), n);
    }
}

TEST(FakeSystem, KappaOutOfRange) {
    EXPECT_THROW(build_fake_system(example1_target_gain(), 0.0), Error);
    EXPECT_THROW(build_fake_system(example1_target_gain(), 1.5), Error);
}

TEST(Forge, ZeroInputForgesZero) {
    const auto sys = example1_plant();
    const auto truth = simulate(sys, Matrix::Zero(1, 8), Vector::Ones(3));
    const auto forged = forge_measurements(build_fake_system(example1_target_gain(), 1.0), truth);
    EXPECT_EQ(forged.forged.norm(), 0.0);
    EXPECT_EQ(forged.plan.samples(), -truth.states);
}

TEST(Forge, ForgedDataFollowsTheFakeRecursion) {
    const auto truth = example1_truth();
    const auto spec = build_fake_system(example1_target_gain(), 1.0);
    const auto forged = forge_measurements(spec, truth);
    const auto ds = apply_attack(TrajectoryDataset(truth.inputs, truth.states, Provenance::clean()), forged.plan);
    EXPECT_LT((ds.measurements() - forged.forged).cwiseAbs().maxCoeff(), 1e-12);
    const auto h = to_hankel(ds);
    const Matrix r = h.X1() - spec.realization.A() * h.X0() - spec.realization.B() * h.U0();
    EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_TRUE(shift_consistent(forged.plan.A0(), forged.plan.A1()));
    EXPECT_EQ(forged.plan.policy(), AttackPolicy::FakeSystem);
}

TEST(Forge, FirstStepScalesWithKappa) {
    const auto truth = example1_truth();
    const Vector unit = forge_measurements(build_fake_system(example1_target_gain(), 1.0), truth).forged.col(1);
    for (double kappa : {0.5, 1e-2, 1e-4}) {
        const Vector scaled =
            forge_measurements(build_fake_system(example1_target_gain(), kappa), truth).forged.col(1);
        EXPECT_LT((scaled - kappa * unit).norm(), 1e-14 * (1.0 + unit.norm()));
    }
}

TEST(KappaScaling, GainIsSublinearInKappa) {
    const Matrix K = example1_target_gain();
    const Matrix W = Matrix::Identity(3, 3);
    const double unit = fake_gain(K, 1.0, W, 16);
    for (int i = 0; i < 30; ++i) {
        const double kappa = std::pow(10.0, -6.0 + 6.0 * i / 29.0);
        EXPECT_LE(fake_gain(K, kappa, W, 16), kappa * unit + 1e-9) << "kappa " << kappa;
    }
}

TEST(KappaClosedForm, BoundaryAndLimits) {
    const auto unit = build_fake_system(example1_target_gain(), 1.0);
    const double delta = finite_horizon_l2_gain(unit.realization, Matrix::Identity(3, 3), 16);
    EXPECT_DOUBLE_EQ(kappa_closed_form(unit, DetectorConfig::identity(3, 2.0 * delta), 16), 1.0);
    EXPECT_DOUBLE_EQ(kappa_closed_form(unit, DetectorConfig::identity(3, 10.0 * delta), 16), 1.0);
    const double tiny = kappa_closed_form(unit, DetectorConfig::identity(3, 1e-9), 16);
    EXPECT_GT(tiny, 0.0);
    EXPECT_LT(tiny, 1e-12);
    EXPECT_LE(fake_gain(example1_target_gain(), tiny, Matrix::Identity(3, 3), 16), 1e-9 / 2);
}

TEST(KappaClosedForm, GainStaysBelowHalfThreshold) {
    const auto unit = build_fake_system(example1_target_gain(), 1.0);
    for (double gamma : {1e-3, 1e-1, 1.0, 10.0, 1e3}) {
        const DetectorConfig cfg = DetectorConfig::identity(3, gamma);
        const double kappa = kappa_closed_form(unit, cfg, 16);
        EXPECT_LE(fake_gain(example1_target_gain(), kappa, cfg.W(), 16), gamma / 2 * (1 + 1e-12));
    }
}

TEST(KappaClosedForm, UnreachableWeightIsDegenerate) {
    const auto unit = build_fake_system(example1_target_gain(), 1.0);
    Matrix W = Matrix::Zero(1, 3);
    W(0, 0) = 1.0; // the first state needs three steps to be reached
    try {
        kappa_closed_form(unit, DetectorConfig(W, 1.0), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateSystem);
    }
}

TEST(KappaLineSearch, LargeThresholdKeepsUnitKappa) {
    const auto unit = build_fake_system(example1_target_gain(), 1.0);
    const double g1 = fake_gain(example1_target_gain(), 1.0, Matrix::Identity(3, 3), 16);
    const auto s = kappa_line_search(unit, DetectorConfig::identity(3, 2.0 * g1), 16);
    EXPECT_EQ(s.kappa, 1.0);
}

TEST(KappaLineSearch, ResultIsStealthyAndTightensWithTolerance) {
    const auto unit = build_fake_system(example1_target_gain(), 1.0);
    const auto cfg = DetectorConfig::identity(3, 1.0);
    const auto coarse = kappa_line_search(unit, cfg, 16, 1e-2);
    const auto fine = kappa_line_search(unit, cfg, 16, 1e-10);
    EXPECT_LE(coarse.gain, 1.0);
    EXPECT_LE(fine.gain, 1.0);
    EXPECT_LE(1.0 - fine.gain, 1.0 - coarse.gain);
    EXPECT_LT(1.0 - fine.gain, 1e-6);
    EXPECT_EQ(fine.grid_kappa.size(), 50u);
    EXPECT_GE(fine.kappa, kappa_closed_form(unit, cfg, 16));
}

TEST(EndToEnd, AttackedDataMakesUnstableTargetsFeasible) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rs = oracle::random_controllable(3, 1, rng);
        const SystemRealization sys(rs.A, rs.B);
        const Matrix K = fixture::unstable_gain(sys, rng);
        const auto truth = simulate(sys, gen_pe_input(1, 16, 4, 100 + trial), Vector::Zero(3));
        const auto spec = build_fake_system(K, 1.0);
        const auto forged = forge_measurements(spec, truth);
        const auto ds = collect_dataset(sys, truth.inputs, forged.plan);
        const auto f = feasibility_check(K, to_hankel(ds));
        EXPECT_TRUE(f.feasible()) << "trial " << trial << " margin " << f.margin << " " << f.diagnostic;
        EXPECT_GT(spectral_radius(sys.closed_loop(K)), 1.0);
        EXPECT_LT(spectral_radius(spec.realization.closed_loop(K)), 1e-4);
    }
}

TEST(EndToEnd, ClosedFormKappaRaisesNoAlarm) {
    std::mt19937_64 rng(78);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rs = oracle::random_controllable(3, 1, rng);
        const SystemRealization sys(rs.A, rs.B);
        const Matrix K = fixture::unstable_gain(sys, rng);
        const auto truth = simulate(sys, gen_pe_input(1, 16, 4, 200 + trial), Vector::Zero(3));
        const auto cfg = DetectorConfig::identity(3, 0.5);
        const double kappa = kappa_closed_form(build_fake_system(K, 1.0), cfg, 16);
        const auto forged = forge_measurements(build_fake_system(K, kappa), truth);
        const auto d = detect(collect_dataset(sys, truth.inputs, forged.plan), cfg);
        EXPECT_FALSE(d.alarm);
        EXPECT_LE(d.ratio, cfg.gamma() / 2);
    }
}

} // namespace
} // namespace ddc
