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
#ifndef DDC_DETECTOR_HPP
#define DDC_DETECTOR_HPP

#include "ddc/data.hpp"

namespace ddc {

/// Energy-ratio detector: alarm when |W x~| / |u| exceeds gamma.
class DetectorConfig {
public:
    DetectorConfig(Matrix W, double gamma);

    /// W = I_n.
    static DetectorConfig identity(Index n, double gamma);

    const Matrix& W() const noexcept { return W_; }
    double gamma() const noexcept { return gamma_; }

private:
    Matrix W_;
    double gamma_;
};

struct Detection {
    double ratio = 0.0;
    bool alarm = false;
};

/**
 * Trajectory form: ratio = |W x~[1..T]| / |u[0..T-1]| (stacked Euclidean norms).
 *
 * x~[0] is left out of the window; under x[0] = 0 it carries no energy on
 * clean or forged data. Throws invalid-argument when the input has zero energy.
 */
Detection detect(const TrajectoryDataset& ds, const DetectorConfig& cfg);

/// |W X0|_F / |U0|_F; +inf when U0 = 0 and W X0 != 0.
double frobenius_ratio(const HankelPair& h, const DetectorConfig& cfg);

/// |W X0|_F <= gamma |U0|_F, boundary inclusive.
bool frobenius_stealth_check(const HankelPair& h, const DetectorConfig& cfg);

} // namespace ddc

#endif // DDC_DETECTOR_HPP
