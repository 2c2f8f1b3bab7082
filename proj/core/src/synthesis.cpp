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

#include <Eigen/SVD>

#include "ddc/error.hpp"
#include "ddc/synthesis.hpp"

namespace ddc {

using sdp::Affine;

const char* to_string(Verdict v) noexcept {
    switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::Indeterminate: return "indeterminate";
    }
    return "unknown";
}

namespace {

// Q = basis * Z, and [U0; X0; X1] Q = [U0b; X0b; X1b] Z with orthonormal stacked columns.
struct DataBasis {
    Matrix basis;
    Matrix U0b;
    Matrix X0b;
    Matrix X1b;
    Index rank = 0;
};

DataBasis data_basis(const HankelPair& h) {
    const Index n = h.n();
    const Index m = h.m();
    Matrix S(m + 2 * n, h.horizon());
    S << h.U0(), h.X0(), h.X1();
    // Unit-norm columns: the column space is unchanged, but trajectories that
    // grow geometrically no longer push early samples below the rank cutoff.
    Vector scale = S.colwise().norm().transpose();
    for (Index j = 0; j < scale.size(); ++j) scale(j) = scale(j) > 0.0 ? 1.0 / scale(j) : 1.0;
    S *= scale.asDiagonal();
    Eigen::BDCSVD<Matrix> svd(S, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    DataBasis b;
    if (sv.size() == 0 || sv(0) == 0.0) return b;
    while (b.rank < sv.size() && sv(b.rank) > kRankTolerance * sv(0)) ++b.rank;
    b.basis = scale.asDiagonal() * svd.matrixV().leftCols(b.rank) * sv.head(b.rank).cwiseInverse().asDiagonal();
    const Matrix Ur = svd.matrixU().leftCols(b.rank);
    b.U0b = Ur.topRows(m);
    b.X0b = Ur.middleRows(m, n);
    b.X1b = Ur.bottomRows(n);
    return b;
}

Affine scaled_identity(const Affine& t, Index d) {
    Affine acc = Affine::constant(Matrix::Zero(d, d));
    for (Index i = 0; i < d; ++i) {
        const Matrix e = Matrix::Identity(d, d).col(i);
        acc += (e * t) * e.transpose();
    }
    return acc;
}

void require_excitation(const HankelPair& h) {
    if (h.horizon() < minimum_horizon(h.n(), h.m()))
        throw_invalid("horizon " + std::to_string(h.horizon()) + " is below the minimum " +
                      std::to_string(minimum_horizon(h.n(), h.m())) + " for n=" + std::to_string(h.n()) +
                      ", m=" + std::to_string(h.m()));
    if (!is_pe(h.U0(), h.n() + 1))
        throw_invalid("input is not persistently exciting of order n+1");
}

void finish(const HankelPair& h, SynthesisOutcome& out) {
    const Matrix X0Q = h.X0() * out.Q;
    out.condition_number = condition_number(X0Q);
    if (!std::isfinite(out.condition_number) || out.condition_number > 1e14)
        throw_numerical("X0 Q is numerically singular (condition number " + std::to_string(out.condition_number) + ")");
    out.K = gain_from_certificate(h, out.Q);
    if (!all_finite(out.K)) throw_numerical("gain has non-finite entries");
    if (out.condition_number > 1e10 && out.status == sdp::Status::Optimal) {
        out.status = sdp::Status::Inaccurate;
        out.diagnostic += "X0 Q badly conditioned; ";
    }
}

void check_solver(const sdp::SolveReport& report, const char* what) {
    if (report.status == sdp::Status::Infeasible)
        throw Error(ErrorKind::SynthesisInfeasible, std::string(what) + ": LMI infeasible on this data");
    if (!sdp::has_values(report.status))
        throw Error(ErrorKind::NumericalFailure, std::string(what) + ": solver failed: " + report.diagnostic);
}

} // namespace

Matrix gain_from_certificate(const HankelPair& h, const Matrix& Q) {
    if (Q.rows() != h.horizon() || Q.cols() != h.n()) throw_invalid("certificate Q must be T x n");
    const Matrix X0Q = h.X0() * Q;
    const Matrix U0Q = h.U0() * Q;
    // K (X0 Q) = -U0 Q, solved on the transposed system.
    return -(X0Q.transpose().fullPivLu().solve(U0Q.transpose())).transpose();
}

bool rank_condition(const HankelPair& h) {
    Matrix L(h.m() + h.n(), h.horizon());
    L << h.U0(), h.X0();
    return numerical_rank(L) == h.n() + h.m();
}

SynthesisOutcome stabilizing_gain(const HankelPair& h) {
    require_excitation(h);
    const Index n = h.n();
    const DataBasis b = data_basis(h);
    if (b.rank == 0) throw_numerical("data matrices are identically zero");

    sdp::Problem p;
    const auto Z = p.add_variable("Z", b.rank, n);
    const Affine z = Affine::of(Z);
    const Affine X0Q = b.X0b * z;
    const Affine X1Q = b.X1b * z;
    p.add_equality(X0Q - X0Q.transpose(), "X0Q symmetric");
    p.add_psd(Affine::grid({{X0Q, X1Q}, {X1Q.transpose(), X0Q}}), 1.0, "stability LMI");
    p.minimize(X0Q.trace());

    const auto report = sdp::solve(p);
    check_solver(report, "stabilizing gain");
    SynthesisOutcome out;
    out.Q = b.basis * report.value(Z);
    out.status = report.status;
    out.diagnostic = report.diagnostic;
    finish(h, out);
    return out;
}

FeasibilityResult feasibility_check(const Matrix& K, const HankelPair& h) {
    const Index n = h.n();
    const Index m = h.m();
    if (K.rows() != m || K.cols() != n) throw_invalid("gain must be m x n");
    FeasibilityResult res;
    const DataBasis b = data_basis(h);
    if (b.rank == 0) {
        res.verdict = Verdict::Infeasible;
        res.status = sdp::Status::Infeasible;
        res.diagnostic = "data matrices are identically zero";
        return res;
    }

    sdp::Problem p;
    const auto Z = p.add_variable("Z", b.rank, n);
    const auto t = p.add_variable("t", 1, 1);
    const Affine z = Affine::of(Z);
    const Affine X0Q = b.X0b * z;
    const Affine X1Q = b.X1b * z;
    const Affine U0Q = b.U0b * z;
    p.add_equality(X0Q - X0Q.transpose(), "X0Q symmetric");
    p.add_equality(X0Q.trace() - Matrix::Ones(1, 1), "normalization");
    p.add_equality(U0Q + K * X0Q, "gain link");
    const Affine lmi = Affine::grid({{X0Q, X1Q}, {X1Q.transpose(), X0Q}});
    p.add_psd(lmi - scaled_identity(Affine::of(t), 2 * n), 0.0, "stability LMI");
    p.maximize(Affine::of(t));

    const auto report = sdp::solve(p);
    res.status = report.status;
    res.diagnostic = report.diagnostic;
    if (report.status == sdp::Status::Infeasible) {
        res.verdict = Verdict::Infeasible;
        return res;
    }
    if (!sdp::has_values(report.status)) return res;
    res.margin = report.value(t)(0, 0);
    if (res.margin > kFeasibilityMargin) {
        res.verdict = Verdict::Feasible;
        res.Q = b.basis * report.value(Z);
    } else {
        res.verdict = Verdict::Infeasible;
    }
    return res;
}

SynthesisOutcome h2_gain(const HankelPair& h, const PerformanceWeights& w) {
    const Index n = h.n();
    const Index m = h.m();
    if (w.Qx().rows() != n || w.R().rows() != m) throw_invalid("weights do not match the data dimensions");
    require_excitation(h);
    if (!rank_condition(h)) throw_invalid("rank([U0; X0]) != n + m: H2 synthesis is not solvable on this data");
    const DataBasis b = data_basis(h);

    sdp::Problem p;
    const auto Z = p.add_variable("Z", b.rank, n);
    const auto X = p.add_symmetric_variable("X", m);
    const Affine z = Affine::of(Z);
    const Affine x = Affine::of(X);
    const Affine X0Q = b.X0b * z;
    const Affine X1Q = b.X1b * z;
    const Affine RU = w.R_sqrt() * (b.U0b * z);
    p.add_equality(X0Q - X0Q.transpose(), "X0Q symmetric");
    p.add_psd(Affine::grid({{x, RU}, {RU.transpose(), X0Q}}), 0.0, "input cost");
    p.add_psd(Affine::grid({{X0Q - Matrix::Identity(n, n), X1Q}, {X1Q.transpose(), X0Q}}), 0.0, "Lyapunov");
    p.minimize((w.Qx() * X0Q).trace() + x.trace());

    const auto report = sdp::solve(p);
    check_solver(report, "H2 gain");
    SynthesisOutcome out;
    out.Q = b.basis * report.value(Z);
    out.X = report.value(X);
    out.objective = report.objective;
    out.status = report.status;
    out.diagnostic = report.diagnostic;
    finish(h, out);
    return out;
}

} // namespace ddc
