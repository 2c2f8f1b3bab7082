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

#include "ddc/detector.hpp"
#include "ddc/error.hpp"
#include "oracles.hpp"

namespace ddc {
namespace {

TEST(Detect, ZeroMeasurementsGiveZeroRatio) {
    const TrajectoryDataset ds(Matrix::Ones(1, 8), Matrix::Zero(2, 9), Provenance::clean());
    const auto d = detect(ds, DetectorConfig::identity(2, 1.0));
    EXPECT_EQ(d.ratio, 0.0);
    EXPECT_FALSE(d.alarm);
}

TEST(Detect, AlignedScalarSignalsGiveUnitRatio) {
    Matrix u(1, 5);
    u << 1, -2, 3, 0.5, 4;
    Matrix x = Matrix::Zero(1, 6);
    x.rightCols(5) = u;
    const auto d = detect(TrajectoryDataset(u, x, Provenance::clean()), DetectorConfig::identity(1, 1.0));
    EXPECT_NEAR(d.ratio, 1.0, 1e-15);
    EXPECT_FALSE(d.alarm); // inclusive threshold
}

TEST(Detect, ZeroInputIsRejected) {
    const TrajectoryDataset ds(Matrix::Zero(1, 8), Matrix::Ones(2, 9), Provenance::clean());
    EXPECT_THROW(detect(ds, DetectorConfig::identity(2, 1.0)), Error);
}

TEST(Detect, AlarmAboveThreshold) {
    const TrajectoryDataset ds(Matrix::Ones(1, 4), 3.0 * Matrix::Ones(1, 5), Provenance::clean());
    const auto d = detect(ds, DetectorConfig::identity(1, 2.0));
    EXPECT_NEAR(d.ratio, 3.0, 1e-14);
    EXPECT_TRUE(d.alarm);
}

TEST(Detect, ScalingMeasurementsScalesTheRatio) {
    std::mt19937_64 rng(6);
    const Matrix u = oracle::gaussian(2, 12, rng);
    const Matrix x = oracle::gaussian(3, 13, rng);
    const auto cfg = DetectorConfig::identity(3, 1.0);
    const double base = detect(TrajectoryDataset(u, x, Provenance::clean()), cfg).ratio;
    for (double c : {1.5, 10.0, 1e3})
        EXPECT_NEAR(detect(TrajectoryDataset(u, c * x, Provenance::clean()), cfg).ratio, c * base, 1e-12 * c * base);
}

TEST(Detect, AgreesWithFrobeniusOnTheSameWindow) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Index T = 10 + trial;
        const Matrix u = oracle::gaussian(1, T, rng);
        const Matrix x = oracle::gaussian(3, T + 1, rng);
        const Matrix W = oracle::gaussian(2, 3, rng);
        const DetectorConfig cfg(W, 1.0);
        // Pair whose X0 is the detector window x[1..T].
        Matrix s = Matrix::Zero(3, T + 2);
        s.leftCols(T + 1) = x;
        const HankelPair h(s.middleCols(1, T), s.middleCols(2, T), u);
        EXPECT_NEAR(detect(TrajectoryDataset(u, x, Provenance::clean()), cfg).ratio, frobenius_ratio(h, cfg),
                    1e-12);
    }
}

TEST(Frobenius, ZeroStatesPass) {
    const HankelPair h(Matrix::Zero(2, 5), Matrix::Zero(2, 5), Matrix::Ones(1, 5));
    EXPECT_TRUE(frobenius_stealth_check(h, DetectorConfig::identity(2, 1e-12)));
    EXPECT_EQ(frobenius_ratio(h, DetectorConfig::identity(2, 1.0)), 0.0);
}

TEST(Frobenius, BoundaryIsInclusive) {
    // |X0|_F = 2 |U0|_F exactly with dyadic entries.
    const Matrix U0 = Matrix::Ones(1, 4);
    Matrix s = Matrix::Zero(1, 5);
    s << 2, -2, 2, -2, 0;
    const HankelPair h(s.leftCols(4), s.rightCols(4), U0);
    EXPECT_TRUE(frobenius_stealth_check(h, DetectorConfig::identity(1, 2.0)));
    EXPECT_FALSE(frobenius_stealth_check(h, DetectorConfig::identity(1, 1.999999)));
}

TEST(Frobenius, ZeroInputWithEnergyIsInfinite) {
    const HankelPair h(Matrix::Ones(1, 3), Matrix::Ones(1, 3), Matrix::Zero(1, 3));
    EXPECT_TRUE(std::isinf(frobenius_ratio(h, DetectorConfig::identity(1, 1.0))));
    EXPECT_FALSE(frobenius_stealth_check(h, DetectorConfig::identity(1, 1e9)));
}

TEST(DetectorConfig, Validation) {
    EXPECT_THROW(DetectorConfig(Matrix::Identity(2, 2), -1.0), Error);
    EXPECT_THROW(DetectorConfig(Matrix(0, 0), 1.0), Error);
}

} // namespace
} // namespace ddc
