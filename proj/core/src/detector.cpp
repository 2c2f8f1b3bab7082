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
#include <cmath>
#include <limits>

#include "ddc/detector.hpp"
#include "ddc/error.hpp"

namespace ddc {

DetectorConfig::DetectorConfig(Matrix W, double gamma) : W_(std::move(W)), gamma_(gamma) {
    if (!(gamma_ > 0.0) || !std::isfinite(gamma_)) throw_invalid("detector threshold gamma must be positive and finite");
    if (W_.size() == 0 || !all_finite(W_)) throw_invalid("detector weight W must be finite and nonempty");
    if (W_.norm() == 0.0) throw_invalid("detector weight W must be nonzero");
}

DetectorConfig DetectorConfig::identity(Index n, double gamma) { return {Matrix::Identity(n, n), gamma}; }

Detection detect(const TrajectoryDataset& ds, const DetectorConfig& cfg) {
    if (cfg.W().cols() != ds.n()) throw_invalid("detector weight has the wrong number of columns");
    const double input_energy = ds.inputs().norm();
    if (input_energy == 0.0) throw_invalid("input has zero energy; detector ratio undefined");
    const double state_energy = (cfg.W() * ds.measurements().rightCols(ds.horizon())).norm();
    Detection d;
    d.ratio = state_energy / input_energy;
    d.alarm = d.ratio > cfg.gamma();
    return d;
}

double frobenius_ratio(const HankelPair& h, const DetectorConfig& cfg) {
    if (cfg.W().cols() != h.n()) throw_invalid("detector weight has the wrong number of columns");
    const double num = (cfg.W() * h.X0()).norm();
    const double den = h.U0().norm();
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

bool frobenius_stealth_check(const HankelPair& h, const DetectorConfig& cfg) {
    if (cfg.W().cols() != h.n()) throw_invalid("detector weight has the wrong number of columns");
    return (cfg.W() * h.X0()).norm() <= cfg.gamma() * h.U0().norm();
}

} // namespace ddc
