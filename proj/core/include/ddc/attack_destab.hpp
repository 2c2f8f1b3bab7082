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
#ifndef DDC_ATTACK_DESTAB_HPP
#define DDC_ATTACK_DESTAB_HPP

#include <vector>

#include "ddc/data.hpp"
#include "ddc/detector.hpp"
#include "ddc/lti.hpp"

namespace ddc {

/**
 * @brief Canonical-form plant that the target gain renders nilpotent.
 *
 * A~ carries kappa on the superdiagonal and kappa*V as its last row, B~ is zero
 * except its last row (kappa/m)*1, with V the column averages of K~. Then the
 * last row of A~ - B~ K~ vanishes and the matrix is strictly upper triangular.
 */
struct FakeSystemSpec {
    Matrix K_target;      ///< m x n gain the operator should learn
    double kappa = 1.0;
    Eigen::RowVectorXd V; ///< 1 x n
    SystemRealization realization;
};

FakeSystemSpec build_fake_system(const Matrix& K_target, double kappa);

struct ForgedData {
    Matrix forged;   ///< x_a[0..T], n x (T+1)
    AttackPlan plan; ///< a[k] = x_a[k] - x[k]
};

/// Runs the fake plant from x_a[0] = 0 on the true inputs and returns the forged states and the attack that produces them.
ForgedData forge_measurements(const FakeSystemSpec& spec, const StateTrajectory& truth);

/// l2 gain of the fake plant at a given kappa.
double fake_gain(const Matrix& K_target, double kappa, const Matrix& W, Index T);

/// gamma / (2 delta) with delta the unit-kappa gain, clamped to (0, 1].
double kappa_closed_form(const FakeSystemSpec& unit_spec, const DetectorConfig& cfg, Index T);

struct KappaSearch {
    double kappa = 1.0;
    double gain = 0.0;
    std::vector<double> grid_kappa;
    std::vector<double> grid_gain;
    int bisection_steps = 0;
};

/**
 * Largest stealthy kappa found by a 50-point log grid on [1e-6, 1] followed
 * by at most 30 bisection steps (stopping at width eps) inside the bracket
 * where the gain crosses gamma. The returned point always satisfies
 * gain <= gamma; search-failure if no grid point does.
 */
KappaSearch kappa_line_search(const FakeSystemSpec& unit_spec, const DetectorConfig& cfg, Index T, double eps = 1e-8);

} // namespace ddc

#endif // DDC_ATTACK_DESTAB_HPP
