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
#ifndef DDC_EXPERIMENTS_HPP
#define DDC_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ddc/attack_destab.hpp"
#include "ddc/attack_h2.hpp"
#include "ddc/data.hpp"
#include "ddc/detector.hpp"
#include "ddc/lti.hpp"
#include "ddc/synthesis.hpp"

namespace ddc {

// Continuous-time plants of the two reproduced scenarios.
Matrix example1_Ac();
Matrix example1_Bc();
/// Target gain [-0.01, -2.67, 3.27].
Matrix example1_target_gain();
Matrix example2_Ac();
Matrix example2_Bc();

SystemRealization example1_plant(double Ts = 0.15);
SystemRealization example2_plant(double Ts = 0.01);

/// Published reference values, carried into reports for comparison only.
inline constexpr double kReferenceOptimalCost = 61.7407;
inline constexpr double kReferenceAttackedCost = 244.49;
Matrix reference_optimal_gain();

struct Example1Config {
    double Ts = 0.15;
    Index horizon = 16;
    std::uint64_t seed = 7;
    double gamma = 1.0;
    std::optional<double> kappa; ///< overrides the closed-form choice
    std::optional<std::filesystem::path> out_dir;
    bool plots = true;
};

struct Example1Report {
    SystemRealization plant;
    Matrix K_target;
    StateTrajectory truth;
    Matrix forged_unit;  ///< forged states at kappa = 1
    Matrix forged;       ///< forged states at the deployed kappa
    FeasibilityResult feasibility_attacked; ///< K~ against kappa = 1 data
    FeasibilityResult feasibility_deployed; ///< K~ against deployed-kappa data
    FeasibilityResult feasibility_clean;    ///< K~ against clean data
    double rho_true = 0.0; ///< spectral radius of A - B K~
    double rho_fake = 0.0; ///< spectral radius of A~ - B~ K~ at kappa = 1
    double delta = 0.0;    ///< l2 gain of the unit-kappa fake plant
    double kappa_closed = 0.0;
    KappaSearch kappa_search;
    double kappa = 0.0;    ///< deployed
    Detection detection;   ///< on the deployed attacked data
    std::vector<std::filesystem::path> files;
};

Example1Report run_example1(const Example1Config& cfg);

struct Example2Config {
    double Ts = 0.01;
    Index horizon = 20;
    std::uint64_t seed = 7;
    double gamma = 31.622776601683793; // 10^(3/2)
    int max_iterations = 3;
    double eps = kDefaultGainTolerance;
    std::optional<std::filesystem::path> out_dir;
    bool plots = true;
};

struct Example2Report {
    SystemRealization plant;
    TrajectoryDataset clean;
    SynthesisOutcome clean_synthesis;
    Matrix K_star;
    double J_star = 0.0;
    AlternatingResult attack;
    AttackEvaluation evaluation;
    bool rank_condition_attacked = false;
    bool stealthy = false;
    double frobenius_ratio = 0.0;
    std::vector<std::filesystem::path> files;
};

Example2Report run_example2(const Example2Config& cfg);

struct KappaSweepConfig {
    double Ts = 0.15;
    Index horizon = 16;
    double gamma = 1.0;
    int points = 50;
    double kappa_min = 1e-6;
    std::optional<std::filesystem::path> out_dir;
    bool plots = true;
};

struct KappaSweepRow {
    double kappa;
    double gain;
    double linear_bound; ///< kappa times the unit gain
};

struct KappaSweepReport {
    std::vector<KappaSweepRow> rows;
    double delta = 0.0;
    double kappa_closed = 0.0;
    KappaSearch search;
    std::vector<std::filesystem::path> files;
};

KappaSweepReport run_kappa_sweep(const KappaSweepConfig& cfg);

struct BiasProbeConfig {
    Index horizon = 20;
    std::uint64_t seed = 7;
    std::optional<std::filesystem::path> out_dir;
    bool plots = true;
};

struct BiasProbeRow {
    double rho;
    Index rank_generic;   ///< rank([U0; X0 + rho 1 1']) on generic PE data
    Index rank_mitigated; ///< same on the mitigation-probe data
};

struct BiasProbeReport {
    bool condition_generic = false;
    bool condition_mitigated = true;
    std::optional<double> critical_generic;
    std::optional<double> critical_mitigated;
    Index rank_at_critical = 0; ///< mitigated data biased by the critical rho
    std::vector<BiasProbeRow> rows;
    std::vector<std::filesystem::path> files;
};

/// Constant-bias sweep over rho in {+-1e-2, ..., +-1e2} on the second plant.
BiasProbeReport run_bias_probe(const BiasProbeConfig& cfg);

/// The bias grid used by the probe: +-10^k for k = -2..2.
std::vector<double> bias_grid();

} // namespace ddc

#endif // DDC_EXPERIMENTS_HPP
