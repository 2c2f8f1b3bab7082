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
#ifndef DDC_ATTACK_H2_HPP
#define DDC_ATTACK_H2_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ddc/data.hpp"
#include "ddc/detector.hpp"
#include "ddc/lti.hpp"
#include "ddc/synthesis.hpp"

namespace ddc {

struct OperatorStep {
    Matrix Q;
    Matrix X;
    Matrix K;
    double objective = 0.0;
};

/// The operator's H2 program on (possibly attacked) data. Throws synthesis-infeasible when the rank condition fails.
OperatorStep operator_step(const HankelPair& h_attacked, const PerformanceWeights& w);

struct AdversaryStep {
    AttackPlan plan;
    double objective = 0.0; ///< trace(Qx X~0 Q) at the returned plan
    bool solved = false;    ///< false when the program had no solution and the zero attack was returned
    std::string diagnostic;
};

/**
 * Maximizes trace(Qx X~0 Q) over the attack samples a[0..T] at fixed (Q, X),
 * keeping both operator LMIs, symmetry of X~0 Q and |W X~0|_F <= gamma |U0|_F.
 * X~0 and X~1 are built from the same samples, so shift consistency is exact.
 */
AdversaryStep adversary_step(const HankelPair& h_clean, const Matrix& Q, const Matrix& X, const PerformanceWeights& w,
                             const DetectorConfig& cfg);

enum class StopReason { MaxIterations, GainConverged, SolverFailure };

const char* to_string(StopReason r) noexcept;

struct AlternatingState {
    int iteration = 0;
    Matrix Q;
    Matrix X;
    Matrix K;                                ///< latest operator gain
    std::optional<HankelPair> attacked;      ///< data the returned plan produces
    std::vector<double> adversary_objectives;
    std::vector<double> operator_objectives;
    std::vector<double> gain_changes;        ///< |K(k) - K(k-1)|_F, with K(0) = 0
    std::vector<Matrix> gains;
    int backtracks = 0;
    StopReason stop_reason = StopReason::MaxIterations;
    std::string diagnostic;
};

struct AlternatingResult {
    AttackPlan plan;
    AlternatingState state;
};

inline constexpr double kDefaultGainTolerance = 1e-4;

/**
 * Alternates the operator's program and the adversary's program up to
 * `max_iterations` times and stops early once the operator gain moves by less
 * than `eps`. A plan that leaves the operator without a solution is halved up
 * to five times; after that the best plan so far is returned with stop
 * reason solver-failure.
 */
AlternatingResult alternating_attack(const HankelPair& h_clean, const PerformanceWeights& w, const DetectorConfig& cfg,
                                     int max_iterations, double eps = kDefaultGainTolerance);

struct AttackEvaluation {
    Matrix K_attacked;
    Matrix K_clean;
    double J_attacked = 0.0; ///< on the true plant; +inf when the gain destabilizes it
    double J_clean = 0.0;
    double ratio = 0.0;
};

AttackEvaluation evaluate_attack(const SystemRealization& sys, const AttackPlan& plan, const PerformanceWeights& w,
                                 const HankelPair& h_clean);

/// Residual of the all-ones row against rowspace([U0; X0]) above which it counts as outside.
inline constexpr double kRowSpaceTolerance = 1e-6;

/// True when the all-ones row lies outside rowspace([U0; X0]); then no constant bias breaks the rank condition.
bool bias_rank_condition(const HankelPair& h_clean);

/**
 * The single bias rho that makes [U0; X0 + rho 1 1'] rank deficient, if one exists.
 *
 * Writing 1' = a' U0 + b' X0, the rank drops exactly at rho = -1 / sum(b);
 * nothing when 1 is outside the row space or sum(b) = 0.
 */
std::optional<double> critical_bias(const HankelPair& h_clean);

struct MitigationProbe {
    Matrix inputs;             ///< m x T
    TrajectoryDataset dataset; ///< clean data the inputs produce
    Eigen::RowVectorXd feedback; ///< beta in u_1[k] = level - beta x[k]
    bool condition_holds = true; ///< bias_rank_condition on the probe data
    std::optional<double> breaking_bias;
};

/**
 * Input design that puts the all-ones row in rowspace([U0; X0]).
 *
 * Channel 0 follows u_0[k] = level - beta' x[k] with beta = `feedback_gain` * 1',
 * the other channels are i.i.d. normal. Then 1' = (U0_row0 + beta' X0) / level,
 * and the bias rho = -level / sum(beta) breaks the rank condition.
 */
MitigationProbe mitigation_probe(const SystemRealization& sys, Index T, std::uint64_t seed, double level = 1.0,
                                 double feedback_gain = 0.1);

} // namespace ddc

#endif // DDC_ATTACK_H2_HPP
