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
#ifndef DDC_SYNTHESIS_HPP
#define DDC_SYNTHESIS_HPP

#include <string>

#include "ddc/data.hpp"
#include "ddc/lti.hpp"
#include "ddc/sdp.hpp"

/**
 * Operator-side controller synthesis from a Hankel pair.
 *
 * Gains act as u = -K x, so a gain is accepted when A - BK is Schur. All
 * programs search over Q through the reduced parametrization Q = V S^{-1} Z
 * of the row space of [U0; X0; X1]; components of Q outside that row space
 * do not change any constraint and are dropped.
 */
namespace ddc {

struct SynthesisOutcome {
    Matrix K;                ///< m x n
    Matrix Q;                ///< T x n certificate
    Matrix X;                ///< m x m auxiliary matrix, empty for the stabilizing program
    double objective = 0.0;  ///< trace objective of the H2 program, 0 otherwise
    sdp::Status status = sdp::Status::Failed;
    double condition_number = 0.0; ///< cond(X0 Q)
    std::string diagnostic;
};

/// Stabilizing gain with a certificate Q: min trace(X0 Q) over the strict LMI scaled to margin one.
SynthesisOutcome stabilizing_gain(const HankelPair& h);

enum class Verdict { Feasible, Infeasible, Indeterminate };

const char* to_string(Verdict v) noexcept;

struct FeasibilityResult {
    Verdict verdict = Verdict::Indeterminate;
    Matrix Q;              ///< certificate when feasible
    double margin = 0.0;   ///< largest t with LMI >= t I under trace(X0 Q) = 1
    sdp::Status status = sdp::Status::Failed;
    std::string diagnostic;

    bool feasible() const noexcept { return verdict == Verdict::Feasible; }
};

/// Margin below which a certificate counts as singular.
inline constexpr double kFeasibilityMargin = 1e-6;

/// Whether `K` is reachable from the data: some Q satisfies the LMI with U0 Q = -K X0 Q.
FeasibilityResult feasibility_check(const Matrix& K, const HankelPair& h);

/// Data-driven H2-optimal gain; `objective` equals the squared H2 cost of the returned gain on data-consistent plants.
SynthesisOutcome h2_gain(const HankelPair& h, const PerformanceWeights& w);

/// rank([U0; X0]) == n + m.
bool rank_condition(const HankelPair& h);

/// Gain formula shared by all programs: K = -U0 Q (X0 Q)^{-1}.
Matrix gain_from_certificate(const HankelPair& h, const Matrix& Q);

} // namespace ddc

#endif // DDC_SYNTHESIS_HPP
