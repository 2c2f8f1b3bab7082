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

#include "ddc/attack_h2.hpp"
#include "ddc/error.hpp"
#include "ddc/sdp.hpp"

namespace ddc {

using sdp::Affine;

const char* to_string(StopReason r) noexcept {
    switch (r) {
    case StopReason::MaxIterations: return "max-iters";
    case StopReason::GainConverged: return "gain-converged";
    case StopReason::SolverFailure: return "solver-failure";
    }
    return "unknown";
}

OperatorStep operator_step(const HankelPair& h_attacked, const PerformanceWeights& w) {
    if (!rank_condition(h_attacked))
        throw Error(ErrorKind::SynthesisInfeasible, "attacked data violate the rank condition rank([U0; X0]) = n + m");
    const SynthesisOutcome out = h2_gain(h_attacked, w);
    return {out.Q, out.X, out.K, out.objective};
}

AdversaryStep adversary_step(const HankelPair& h_clean, const Matrix& Q, const Matrix& X, const PerformanceWeights& w,
                             const DetectorConfig& cfg) {
    const Index n = h_clean.n();
    const Index m = h_clean.m();
    const Index T = h_clean.horizon();
    if (Q.rows() != T || Q.cols() != n) throw_invalid("certificate Q must be T x n");
    if (X.rows() != m || X.cols() != m) throw_invalid("auxiliary X must be m x m");
    if (cfg.W().cols() != n) throw_invalid("detector weight has the wrong number of columns");

    sdp::Problem p;
    const auto a = p.add_variable("a", n, T + 1);
    const Affine samples = Affine::of(a);
    const Affine A0 = samples.block(0, 0, n, T);
    const Affine A1 = samples.block(0, 1, n, T);
    const Affine X0Q = A0 * Q + h_clean.X0() * Q;
    const Affine X1Q = A1 * Q + h_clean.X1() * Q;
    const Matrix RU = w.R_sqrt() * h_clean.U0() * Q;

    p.add_equality(X0Q - X0Q.transpose(), "X0Q symmetric");
    p.add_psd(Affine::grid({{Affine::constant(X), Affine::constant(RU)}, {Affine::constant(RU.transpose()), X0Q}}), 0.0,
              "input cost");
    p.add_psd(Affine::grid({{X0Q - Matrix::Identity(n, n), X1Q}, {X1Q.transpose(), X0Q}}), 0.0, "Lyapunov");
    // Bound tightened by a relative 1e-7 so that solver round-off cannot push the plan over the threshold.
    const double bound = cfg.gamma() * h_clean.U0().norm() * (1.0 - 1e-7);
    p.add_soc(cfg.W() * A0 + cfg.W() * h_clean.X0(), Affine::scalar(bound), "stealth");
    p.maximize((w.Qx() * X0Q).trace());

    const auto report = sdp::solve(p);
    if (!sdp::has_values(report.status)) {
        return {AttackPlan::zero(n, T, AttackPolicy::AlternatingH2), 0.0, false,
                std::string("adversary program ") + sdp::to_string(report.status) + ": " + report.diagnostic};
    }
    AttackPlan plan(report.value(a), AttackPolicy::AlternatingH2);
    const Matrix attacked_X0 = h_clean.X0() + plan.A0();
    const double objective = (w.Qx() * attacked_X0 * Q).trace();
    return {std::move(plan), objective, true, report.diagnostic};
}

namespace {

// Operator step with the halving fallback; updates `plan` in place.
std::optional<OperatorStep> operator_with_backtracking(const HankelPair& h_clean, const PerformanceWeights& w,
                                                       AttackPlan& plan, AlternatingState& state) {
    for (int attempt = 0;; ++attempt) {
        try {
            return operator_step(h_clean.attacked(plan), w);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::SynthesisInfeasible && e.kind() != ErrorKind::NumericalFailure &&
                e.kind() != ErrorKind::InvalidArgument)
                throw;
            if (attempt == 5) {
                state.diagnostic = std::string("operator step failed after 5 halvings: ") + e.what();
                return std::nullopt;
            }
            plan = plan.scaled(0.5);
            ++state.backtracks;
        }
    }
}

} // namespace

AlternatingResult alternating_attack(const HankelPair& h_clean, const PerformanceWeights& w, const DetectorConfig& cfg,
                                     int max_iterations, double eps) {
    if (max_iterations < 0) throw_invalid("iteration budget must be nonnegative");
    if (!(eps >= 0.0)) throw_invalid("gain tolerance must be nonnegative");
    if (!rank_condition(h_clean)) throw_invalid("clean data violate the rank condition");

    const Index n = h_clean.n();
    const Index m = h_clean.m();
    const Index T = h_clean.horizon();
    AlternatingState state;
    AttackPlan plan = AttackPlan::zero(n, T, AttackPolicy::AlternatingH2);
    AttackPlan accepted = plan;
    Matrix K_prev = Matrix::Zero(m, n);

    for (int k = 1; k <= max_iterations; ++k) {
        auto op = operator_with_backtracking(h_clean, w, plan, state);
        if (!op) {
            state.stop_reason = StopReason::SolverFailure;
            plan = accepted;
            break;
        }
        accepted = plan;
        state.iteration = k;
        state.Q = op->Q;
        state.X = op->X;
        state.K = op->K;
        state.gains.push_back(op->K);
        state.operator_objectives.push_back(op->objective);
        const double change = (op->K - K_prev).norm();
        state.gain_changes.push_back(change);
        K_prev = op->K;

        AdversaryStep adv = adversary_step(h_clean, op->Q, op->X, w, cfg);
        if (!adv.solved) {
            state.stop_reason = StopReason::SolverFailure;
            state.diagnostic = adv.diagnostic;
            break;
        }
        plan = std::move(adv.plan);
        state.adversary_objectives.push_back(adv.objective);
        if (change < eps) {
            state.stop_reason = StopReason::GainConverged;
            break;
        }
    }

    // The last adversary plan has not been seen by the operator yet.
    if (state.stop_reason != StopReason::SolverFailure && max_iterations > 0) {
        if (!operator_with_backtracking(h_clean, w, plan, state)) {
            state.stop_reason = StopReason::SolverFailure;
            plan = accepted;
        }
    }
    state.attacked = h_clean.attacked(plan);
    return {std::move(plan), std::move(state)};
}

AttackEvaluation evaluate_attack(const SystemRealization& sys, const AttackPlan& plan, const PerformanceWeights& w,
                                 const HankelPair& h_clean) {
    AttackEvaluation ev;
    ev.K_clean = h2_gain(h_clean, w).K;
    ev.J_clean = h2_cost(sys, ev.K_clean, w);
    ev.K_attacked = operator_step(h_clean.attacked(plan), w).K;
    ev.J_attacked = h2_cost(sys, ev.K_attacked, w);
    ev.ratio = std::isfinite(ev.J_attacked) ? ev.J_attacked / ev.J_clean : std::numeric_limits<double>::infinity();
    return ev;
}

bool bias_rank_condition(const HankelPair& h_clean) {
    Matrix L(h_clean.m() + h_clean.n(), h_clean.horizon());
    L << h_clean.U0(), h_clean.X0();
    return row_space_residual(L, Eigen::RowVectorXd::Ones(h_clean.horizon())) > kRowSpaceTolerance;
}

std::optional<double> critical_bias(const HankelPair& h_clean) {
    if (bias_rank_condition(h_clean)) return std::nullopt;
    const Index m = h_clean.m();
    const Index n = h_clean.n();
    Matrix L(m + n, h_clean.horizon());
    L << h_clean.U0(), h_clean.X0();
    const Vector coeff = L.transpose().completeOrthogonalDecomposition().solve(Vector::Ones(h_clean.horizon()));
    const double s = coeff.tail(n).sum();
    if (std::abs(s) <= 1e-12 * std::max(1.0, coeff.norm())) return std::nullopt;
    return -1.0 / s;
}

MitigationProbe mitigation_probe(const SystemRealization& sys, Index T, std::uint64_t seed, double level,
                                 double feedback_gain) {
    const Index n = sys.n();
    const Index m = sys.m();
    if (!(level != 0.0) || !std::isfinite(level)) throw_invalid("probe level must be nonzero and finite");
    if (!(feedback_gain != 0.0) || !std::isfinite(feedback_gain))
        throw_invalid("probe feedback gain must be nonzero and finite");
    if (T < minimum_horizon(n, m)) throw_invalid("probe horizon is below (m+1)n+m");

    Matrix inputs(m, T);
    if (m > 1) inputs.bottomRows(m - 1) = gen_pe_input(m - 1, T, 1, seed);
    const Eigen::RowVectorXd beta = Eigen::RowVectorXd::Constant(n, feedback_gain);
    Matrix states(n, T + 1);
    states.col(0).setZero();
    for (Index k = 0; k < T; ++k) {
        inputs(0, k) = level - beta.dot(states.col(k));
        states.col(k + 1) = sys.A() * states.col(k) + sys.B() * inputs.col(k);
    }
    if (!all_finite(states)) throw Error(ErrorKind::GenerationFailure, "probe trajectory diverged");
    TrajectoryDataset ds(inputs, states, Provenance::clean(), seed);
    const HankelPair h = to_hankel(ds);
    MitigationProbe probe{inputs, ds, beta, bias_rank_condition(h), critical_bias(h)};
    return probe;
}

} // namespace ddc
