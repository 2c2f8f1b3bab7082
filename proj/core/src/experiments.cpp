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
#include "ddc/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "ddc/error.hpp"
#include "ddc/plot.hpp"

namespace ddc {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

Matrix example1_Ac() {
    Matrix A(3, 3);
    A << -0.1, 3, 4, 0, -5, 6, 0, 0, -1;
    return A;
}

Matrix example1_Bc() {
    Matrix B(3, 1);
    B << 1, 0, 1;
    return B;
}

Matrix example1_target_gain() {
    Matrix K(1, 3);
    K << -0.01, -2.67, 3.27;
    return K;
}

Matrix example2_Ac() {
    Matrix A(3, 3);
    A << -1, 3, 4, 0, -2, 6, 0, 0, -0.8;
    return A;
}

Matrix example2_Bc() {
    Matrix B(3, 1);
    B << 0.1, 0, 0.1;
    return B;
}

Matrix reference_optimal_gain() {
    Matrix K(1, 3);
    K << -0.5359, -0.7937, -3.0788;
    return K;
}

SystemRealization example1_plant(double Ts) { return zoh_discretize(example1_Ac(), example1_Bc(), Ts); }

SystemRealization example2_plant(double Ts) { return bilinear_discretize(example2_Ac(), example2_Bc(), Ts); }

std::vector<double> bias_grid() {
    std::vector<double> rhos;
    for (int k = -2; k <= 2; ++k) {
        const double r = std::pow(10.0, k);
        rhos.push_back(-r);
        rhos.push_back(r);
    }
    return rhos;
}

namespace {

constexpr double kGap = std::numeric_limits<double>::quiet_NaN();

std::string cell(double v) {
    if (std::isnan(v)) return {};
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const fs::path& path, const std::vector<std::string>& headers,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    for (size_t j = 0; j < headers.size(); ++j) out << (j ? "," : "") << headers[j];
    out << '\n';
    for (const auto& row : rows) {
        for (size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << cell(row[j]);
        out << '\n';
    }
    if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << doc.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

fs::path prepare(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());
    return dir;
}

std::vector<std::string> indexed(const std::string& prefix, Index count) {
    std::vector<std::string> names;
    for (Index i = 1; i <= count; ++i) names.push_back(prefix + "_" + std::to_string(i));
    return names;
}

json matrix_json(const Matrix& M) {
    json rows = json::array();
    for (Index i = 0; i < M.rows(); ++i) {
        json r = json::array();
        for (Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
        rows.push_back(r);
    }
    return rows;
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json feasibility_json(const FeasibilityResult& f) {
    return {{"verdict", to_string(f.verdict)}, {"margin", f.margin}, {"solver_status", sdp::to_string(f.status)}};
}

// Runs one pipeline stage and prefixes its errors with the stage name.
template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        std::string what = e.what();
        const std::string kind = std::string(to_string(e.kind())) + ": ";
        if (what.rfind(kind, 0) == 0) what.erase(0, kind.size());
        throw Error(e.kind(), std::string(name) + ": " + what);
    }
}

void plot_if(bool enabled, const fs::path& csv, PlotKind kind, const std::string& title, std::vector<fs::path>& files) {
    if (!enabled) return;
    fs::path svg = csv;
    svg.replace_extension(".svg");
    emit_plot(csv, svg, kind, title);
    files.push_back(svg);
}

std::vector<KappaSweepRow> sweep_rows(const Matrix& K, const Matrix& W, Index T, int points, double kappa_min,
                                      double unit_gain) {
    std::vector<KappaSweepRow> rows;
    const double lo = std::log10(kappa_min);
    for (int i = 0; i < points; ++i) {
        const double k = points == 1 ? 1.0 : std::pow(10.0, lo + (0.0 - lo) * i / (points - 1));
        rows.push_back({k, fake_gain(K, k, W, T), k * unit_gain});
    }
    return rows;
}

void write_sweep(const fs::path& path, const std::vector<KappaSweepRow>& rows, double gamma) {
    std::vector<std::vector<double>> data;
    for (const auto& r : rows) data.push_back({r.kappa, r.gain, r.linear_bound, gamma});
    write_csv(path, {"kappa", "gain", "linear_bound", "gamma"}, data);
}

} // namespace

Example1Report run_example1(const Example1Config& cfg) {
    const SystemRealization plant = stage("discretize", [&] { return example1_plant(cfg.Ts); });
    const Matrix K = example1_target_gain();
    const Index n = plant.n();
    const DetectorConfig detector = stage("detector", [&] { return DetectorConfig::identity(n, cfg.gamma); });

    const Matrix u = stage("input", [&] { return gen_pe_input(plant.m(), cfg.horizon, n + 1, cfg.seed); });
    const StateTrajectory truth = simulate(plant, u, Vector::Zero(n));
    const TrajectoryDataset clean(u, truth.states, Provenance::clean(), cfg.seed);

    const FakeSystemSpec unit = build_fake_system(K, 1.0);
    const ForgedData forged_unit = forge_measurements(unit, truth);
    const TrajectoryDataset attacked_unit = apply_attack(clean, forged_unit.plan);

    const auto feas_attacked = stage("feasibility", [&] { return feasibility_check(K, to_hankel(attacked_unit)); });
    const auto feas_clean = stage("feasibility", [&] { return feasibility_check(K, to_hankel(clean)); });

    const double delta = finite_horizon_l2_gain(unit.realization, detector.W(), cfg.horizon);
    const double kappa_cf = stage("kappa", [&] { return kappa_closed_form(unit, detector, cfg.horizon); });
    const KappaSearch search = stage("kappa", [&] { return kappa_line_search(unit, detector, cfg.horizon); });
    const double kappa = cfg.kappa.value_or(kappa_cf);

    const FakeSystemSpec deployed = stage("fake-system", [&] { return build_fake_system(K, kappa); });
    const ForgedData forged = forge_measurements(deployed, truth);
    const TrajectoryDataset attacked = apply_attack(clean, forged.plan);
    const auto feas_deployed = stage("feasibility", [&] { return feasibility_check(K, to_hankel(attacked)); });
    const Detection detection = detect(attacked, detector);

    std::vector<fs::path> files;
    if (cfg.out_dir) {
        const fs::path dir = prepare(*cfg.out_dir);
        stage("write", [&] {
            std::vector<std::string> headers{"k"};
            for (auto names : {indexed("u", plant.m()), indexed("x", n), indexed("xa", n), indexed("xk", n)})
                headers.insert(headers.end(), names.begin(), names.end());
            std::vector<std::vector<double>> rows;
            for (Index k = 0; k <= cfg.horizon; ++k) {
                std::vector<double> r{static_cast<double>(k)};
                for (Index i = 0; i < plant.m(); ++i) r.push_back(k < cfg.horizon ? u(i, k) : kGap);
                for (Index i = 0; i < n; ++i) r.push_back(truth.states(i, k));
                for (Index i = 0; i < n; ++i) r.push_back(forged_unit.forged(i, k));
                for (Index i = 0; i < n; ++i) r.push_back(forged.forged(i, k));
                rows.push_back(std::move(r));
            }
            const fs::path traj = dir / "example1_trajectories.csv";
            write_csv(traj, headers, rows);
            files.push_back(traj);
            plot_if(cfg.plots, traj, PlotKind::Step, "Inputs, true states and forged states", files);

            const fs::path sweep = dir / "example1_kappa_sweep.csv";
            write_sweep(sweep, sweep_rows(K, detector.W(), cfg.horizon, 50, 1e-6, delta), cfg.gamma);
            files.push_back(sweep);
            plot_if(cfg.plots, sweep, PlotKind::LogX, "Fake-plant l2 gain against kappa", files);

            save_dataset(clean, dir / "example1_clean");
            save_dataset(attacked_unit, dir / "example1_attacked_unit");
            save_dataset(attacked, dir / "example1_attacked");
            for (const char* stem : {"example1_clean", "example1_attacked_unit", "example1_attacked"}) {
                files.push_back(dir / (std::string(stem) + ".ddc.csv"));
                files.push_back(dir / (std::string(stem) + ".ddc.json"));
            }

            json summary;
            summary["scenario"] = "example1";
            summary["Ts"] = cfg.Ts;
            summary["horizon"] = cfg.horizon;
            summary["seed"] = cfg.seed;
            summary["gamma"] = cfg.gamma;
            summary["A"] = matrix_json(plant.A());
            summary["B"] = matrix_json(plant.B());
            summary["K_target"] = matrix_json(K);
            summary["rho_true"] = spectral_radius(plant.closed_loop(K));
            summary["rho_fake"] = spectral_radius(unit.realization.closed_loop(K));
            summary["feasibility_attacked"] = feasibility_json(feas_attacked);
            summary["feasibility_deployed"] = feasibility_json(feas_deployed);
            summary["feasibility_clean"] = feasibility_json(feas_clean);
            summary["delta"] = delta;
            summary["kappa_closed_form"] = kappa_cf;
            summary["kappa_line_search"] = search.kappa;
            summary["kappa"] = kappa;
            summary["detector_ratio"] = detection.ratio;
            summary["alarm"] = detection.alarm;
            const fs::path path = dir / "example1_summary.json";
            write_json(path, summary);
            files.push_back(path);
            return 0;
        });
    }

    return Example1Report{plant,
                          K,
                          truth,
                          forged_unit.forged,
                          forged.forged,
                          feas_attacked,
                          feas_deployed,
                          feas_clean,
                          spectral_radius(plant.closed_loop(K)),
                          spectral_radius(unit.realization.closed_loop(K)),
                          delta,
                          kappa_cf,
                          search,
                          kappa,
                          detection,
                          files};
}

Example2Report run_example2(const Example2Config& cfg) {
    const SystemRealization plant = stage("discretize", [&] { return example2_plant(cfg.Ts); });
    const Index n = plant.n();
    const Index m = plant.m();
    const PerformanceWeights w = PerformanceWeights::identity(n, m);
    const DetectorConfig detector = stage("detector", [&] { return DetectorConfig::identity(n, cfg.gamma); });

    const Matrix u = stage("input", [&] { return gen_pe_input(m, cfg.horizon, n + 1, cfg.seed); });
    const TrajectoryDataset clean = collect_dataset(plant, u, std::nullopt, cfg.seed);
    const HankelPair h = to_hankel(clean);

    const SynthesisOutcome synth = stage("clean-synthesis", [&] { return h2_gain(h, w); });
    const double J_star = h2_cost(plant, synth.K, w);

    AlternatingResult attack =
        stage("attack", [&] { return alternating_attack(h, w, detector, cfg.max_iterations, cfg.eps); });
    const AttackEvaluation ev = stage("evaluate", [&] { return evaluate_attack(plant, attack.plan, w, h); });
    const HankelPair attacked_h = h.attacked(attack.plan);
    const bool rank_ok = rank_condition(attacked_h);
    const bool stealthy = frobenius_stealth_check(attacked_h, detector);
    const double fro = frobenius_ratio(attacked_h, detector);

    std::vector<fs::path> files;
    if (cfg.out_dir) {
        const fs::path dir = prepare(*cfg.out_dir);
        stage("write", [&] {
            const auto& st = attack.state;
            std::vector<std::string> hist_headers{"iteration", "operator_objective", "adversary_objective",
                                                  "gain_change"};
            const auto kn = indexed("K", m * n);
            hist_headers.insert(hist_headers.end(), kn.begin(), kn.end());
            std::vector<std::vector<double>> hist;
            for (size_t i = 0; i < st.gains.size(); ++i) {
                std::vector<double> r{static_cast<double>(i + 1), st.operator_objectives[i],
                                      i < st.adversary_objectives.size() ? st.adversary_objectives[i] : kGap,
                                      st.gain_changes[i]};
                for (Index k = 0; k < st.gains[i].size(); ++k) r.push_back(st.gains[i](k));
                hist.push_back(std::move(r));
            }
            const fs::path hist_path = dir / "example2_history.csv";
            write_csv(hist_path, hist_headers, hist);
            files.push_back(hist_path);

            std::vector<std::string> headers{"k"};
            for (auto names : {indexed("u", m), indexed("x", n), indexed("a", n), indexed("xt", n)})
                headers.insert(headers.end(), names.begin(), names.end());
            headers.push_back("state_energy");
            headers.push_back("threshold");
            const Matrix& xs = clean.measurements();
            const Matrix& a = attack.plan.samples();
            std::vector<std::vector<double>> rows;
            double state_sq = 0.0;
            double input_sq = 0.0;
            for (Index k = 0; k <= cfg.horizon; ++k) {
                std::vector<double> r{static_cast<double>(k)};
                for (Index i = 0; i < m; ++i) r.push_back(k < cfg.horizon ? u(i, k) : kGap);
                for (Index i = 0; i < n; ++i) r.push_back(xs(i, k));
                for (Index i = 0; i < n; ++i) r.push_back(a(i, k));
                for (Index i = 0; i < n; ++i) r.push_back(xs(i, k) + a(i, k));
                // Running window [0, k] of the Frobenius stealth row, both sides unsquared.
                if (k < cfg.horizon) {
                    state_sq += (detector.W() * (xs.col(k) + a.col(k))).squaredNorm();
                    input_sq += u.col(k).squaredNorm();
                }
                r.push_back(k < cfg.horizon ? std::sqrt(state_sq) : kGap);
                r.push_back(k < cfg.horizon ? cfg.gamma * std::sqrt(input_sq) : kGap);
                rows.push_back(std::move(r));
            }
            const fs::path attack_path = dir / "example2_attack.csv";
            write_csv(attack_path, headers, rows);
            files.push_back(attack_path);
            plot_if(cfg.plots, attack_path, PlotKind::Line, "States, attack and detection threshold", files);

            save_dataset(clean, dir / "example2_clean");
            save_dataset(apply_attack(clean, attack.plan), dir / "example2_attacked");
            for (const char* stem : {"example2_clean", "example2_attacked"}) {
                files.push_back(dir / (std::string(stem) + ".ddc.csv"));
                files.push_back(dir / (std::string(stem) + ".ddc.json"));
            }

            json summary;
            summary["scenario"] = "example2";
            summary["Ts"] = cfg.Ts;
            summary["horizon"] = cfg.horizon;
            summary["seed"] = cfg.seed;
            summary["gamma"] = cfg.gamma;
            summary["max_iterations"] = cfg.max_iterations;
            summary["eps"] = cfg.eps;
            summary["A"] = matrix_json(plant.A());
            summary["B"] = matrix_json(plant.B());
            summary["K_star"] = matrix_json(synth.K);
            summary["J_star"] = J_star;
            summary["K_attacked"] = matrix_json(ev.K_attacked);
            summary["J_attacked"] = number_or_null(ev.J_attacked);
            summary["ratio"] = number_or_null(ev.ratio);
            summary["reference_J_star"] = kReferenceOptimalCost;
            summary["reference_K_star"] = matrix_json(reference_optimal_gain());
            summary["reference_J_attacked"] = kReferenceAttackedCost;
            summary["iterations"] = st.iteration;
            summary["stop_reason"] = to_string(st.stop_reason);
            summary["backtracks"] = st.backtracks;
            summary["rank_condition_attacked"] = rank_ok;
            summary["stealthy"] = stealthy;
            summary["frobenius_ratio"] = fro;
            const fs::path path = dir / "example2_summary.json";
            write_json(path, summary);
            files.push_back(path);
            return 0;
        });
    }

    return Example2Report{plant,   clean,   synth,    synth.K, J_star, std::move(attack), ev, rank_ok,
                          stealthy, fro,    files};
}

KappaSweepReport run_kappa_sweep(const KappaSweepConfig& cfg) {
    if (cfg.points < 1) throw_invalid("sweep needs at least one point");
    if (!(cfg.kappa_min > 0.0 && cfg.kappa_min <= 1.0)) throw_invalid("kappa_min must lie in (0, 1]");
    const SystemRealization plant = stage("discretize", [&] { return example1_plant(cfg.Ts); });
    const Matrix K = example1_target_gain();
    const DetectorConfig detector = DetectorConfig::identity(plant.n(), cfg.gamma);
    const FakeSystemSpec unit = build_fake_system(K, 1.0);

    KappaSweepReport rep;
    rep.delta = finite_horizon_l2_gain(unit.realization, detector.W(), cfg.horizon);
    rep.rows = sweep_rows(K, detector.W(), cfg.horizon, cfg.points, cfg.kappa_min, rep.delta);
    rep.kappa_closed = stage("kappa", [&] { return kappa_closed_form(unit, detector, cfg.horizon); });
    rep.search = stage("kappa", [&] { return kappa_line_search(unit, detector, cfg.horizon); });
    if (cfg.out_dir) {
        const fs::path dir = prepare(*cfg.out_dir);
        const fs::path path = dir / "kappa_sweep.csv";
        write_sweep(path, rep.rows, cfg.gamma);
        rep.files.push_back(path);
        plot_if(cfg.plots, path, PlotKind::LogX, "Fake-plant l2 gain against kappa", rep.files);
    }
    return rep;
}

BiasProbeReport run_bias_probe(const BiasProbeConfig& cfg) {
    const SystemRealization plant = example2_plant();
    const Index n = plant.n();
    const Index m = plant.m();
    const Matrix u = stage("input", [&] { return gen_pe_input(m, cfg.horizon, n + 1, cfg.seed); });
    const HankelPair generic = to_hankel(collect_dataset(plant, u));
    const MitigationProbe probe = stage("mitigation", [&] { return mitigation_probe(plant, cfg.horizon, cfg.seed); });
    const HankelPair mitigated = to_hankel(probe.dataset);

    const auto rank_under = [&](const HankelPair& h, double rho) {
        const HankelPair b = h.attacked(AttackPlan::constant_bias(n, h.horizon(), rho));
        Matrix L(m + n, h.horizon());
        L << b.U0(), b.X0();
        return numerical_rank(L);
    };

    BiasProbeReport rep;
    rep.condition_generic = bias_rank_condition(generic);
    rep.condition_mitigated = probe.condition_holds;
    rep.critical_generic = critical_bias(generic);
    rep.critical_mitigated = probe.breaking_bias;
    if (rep.critical_mitigated) rep.rank_at_critical = rank_under(mitigated, *rep.critical_mitigated);
    std::vector<double> rhos = bias_grid();
    if (rep.critical_mitigated) rhos.push_back(*rep.critical_mitigated);
    std::sort(rhos.begin(), rhos.end());
    for (double rho : rhos) rep.rows.push_back({rho, rank_under(generic, rho), rank_under(mitigated, rho)});

    if (cfg.out_dir) {
        const fs::path dir = prepare(*cfg.out_dir);
        std::vector<std::vector<double>> rows;
        for (const auto& r : rep.rows)
            rows.push_back({r.rho, static_cast<double>(r.rank_generic), static_cast<double>(r.rank_mitigated)});
        const fs::path path = dir / "bias_probe.csv";
        write_csv(path, {"rho", "rank_generic", "rank_mitigated"}, rows);
        rep.files.push_back(path);
        plot_if(cfg.plots, path, PlotKind::Line, "rank([U0; X0 + rho 1 1']) against rho", rep.files);
    }
    return rep;
}

} // namespace ddc
