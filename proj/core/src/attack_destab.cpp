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

#include "ddc/attack_destab.hpp"
#include "ddc/error.hpp"

namespace ddc {

namespace {

SystemRealization fake_realization(const Matrix& K, double kappa, Eigen::RowVectorXd& V) {
    const Index m = K.rows();
    const Index n = K.cols();
    V = K.colwise().mean();
    Matrix A = Matrix::Zero(n, n);
    for (Index i = 0; i + 1 < n; ++i) A(i, i + 1) = kappa;
    A.row(n - 1) = kappa * V;
    Matrix B = Matrix::Zero(n, m);
    B.row(n - 1).setConstant(kappa / static_cast<double>(m));
    return {A, B};
}

} // namespace

FakeSystemSpec build_fake_system(const Matrix& K_target, double kappa) {
    if (!(kappa > 0.0 && kappa <= 1.0)) throw_invalid("kappa must lie in (0, 1]");
    if (K_target.size() == 0 || !all_finite(K_target)) throw_invalid("target gain must be finite and nonempty");
    Eigen::RowVectorXd V;
    SystemRealization sys = fake_realization(K_target, kappa, V);
    return {K_target, kappa, V, std::move(sys)};
}

ForgedData forge_measurements(const FakeSystemSpec& spec, const StateTrajectory& truth) {
    const auto& fake = spec.realization;
    if (truth.states.rows() != fake.n() || truth.inputs.rows() != fake.m())
        throw_invalid("true trajectory dimensions do not match the fake plant");
    if (truth.states.cols() != truth.inputs.cols() + 1) throw_invalid("true trajectory needs T+1 states for T inputs");
    const StateTrajectory forged = simulate(fake, truth.inputs, Vector::Zero(fake.n()));
    return {forged.states, AttackPlan(forged.states - truth.states, AttackPolicy::FakeSystem)};
}

double fake_gain(const Matrix& K_target, double kappa, const Matrix& W, Index T) {
    return finite_horizon_l2_gain(build_fake_system(K_target, kappa).realization, W, T);
}

double kappa_closed_form(const FakeSystemSpec& unit_spec, const DetectorConfig& cfg, Index T) {
    const double delta = fake_gain(unit_spec.K_target, 1.0, cfg.W(), T);
    if (delta <= 0.0) throw Error(ErrorKind::DegenerateSystem, "fake plant has zero l2 gain; kappa is unconstrained");
    return std::min(1.0, cfg.gamma() / (2.0 * delta));
}

KappaSearch kappa_line_search(const FakeSystemSpec& unit_spec, const DetectorConfig& cfg, Index T, double eps) {
    if (!(eps > 0.0)) throw_invalid("line-search tolerance must be positive");
    const auto gain = [&](double k) { return fake_gain(unit_spec.K_target, k, cfg.W(), T); };
    const double gamma = cfg.gamma();

    KappaSearch out;
    constexpr int kGrid = 50;
    const double lo_exp = -6.0;
    for (int i = 0; i < kGrid; ++i) {
        const double k = std::pow(10.0, lo_exp + (0.0 - lo_exp) * i / (kGrid - 1));
        out.grid_kappa.push_back(k);
        out.grid_gain.push_back(gain(k));
    }
    if (out.grid_gain.back() <= gamma) {
        out.kappa = 1.0;
        out.gain = out.grid_gain.back();
        return out;
    }
    // The curve need not be monotone, so scan the whole grid for the largest stealthy point.
    int best = -1;
    for (int i = 0; i < kGrid; ++i)
        if (out.grid_gain[i] <= gamma) best = i;
    if (best < 0) throw Error(ErrorKind::SearchFailure, "no kappa in [1e-6, 1] meets the detector threshold");

    double lo = out.grid_kappa[best];
    double glo = out.grid_gain[best];
    double hi = out.grid_kappa[best + 1];
    for (int step = 0; step < 30 && hi - lo > eps; ++step) {
        const double mid = 0.5 * (lo + hi);
        const double g = gain(mid);
        ++out.bisection_steps;
        if (g <= gamma) {
            lo = mid;
            glo = g;
        } else {
            hi = mid;
        }
    }
    out.kappa = lo;
    out.gain = glo;
    return out;
}

} // namespace ddc
