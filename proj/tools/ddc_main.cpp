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
// Command line front end: scenario runs, kappa sweep, bias probe and the detector.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ddc/error.hpp"
#include "ddc/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kPrecondition = 2, kSolver = 3, kIo = 4 };

int exit_code(ddc::ErrorKind kind) {
    switch (kind) {
    case ddc::ErrorKind::InvalidArgument:
    case ddc::ErrorKind::GenerationFailure:
    case ddc::ErrorKind::DegenerateSystem: return kPrecondition;
    case ddc::ErrorKind::NumericalFailure:
    case ddc::ErrorKind::SynthesisInfeasible:
    case ddc::ErrorKind::SearchFailure: return kSolver;
    case ddc::ErrorKind::ParseError:
    case ddc::ErrorKind::Io: return kIo;
    }
    return kSolver;
}

std::string row(const ddc::Matrix& M) {
    std::ostringstream os;
    os.precision(6);
    os << '[';
    for (ddc::Index j = 0; j < M.size(); ++j) os << (j ? ", " : "") << M(j);
    os << ']';
    return os.str();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_files(const std::vector<std::filesystem::path>& files) {
    for (const auto& f : files) std::cout << "  wrote " << f.string() << '\n';
}

void report(const ddc::Example1Report& r) {
    std::cout << "example1: zero-order-hold plant, target gain " << row(r.K_target) << '\n'
              << "  spectral radius A - B K~        " << r.rho_true << '\n'
              << "  spectral radius fake closed loop " << r.rho_fake << '\n'
              << "  K~ feasible on attacked data     " << to_string(r.feasibility_attacked.verdict)
              << " (margin " << r.feasibility_attacked.margin << ")\n"
              << "  K~ feasible on clean data        " << to_string(r.feasibility_clean.verdict) << " (margin "
              << r.feasibility_clean.margin << ")\n"
              << "  unit-kappa l2 gain delta         " << r.delta << '\n'
              << "  kappa closed form / line search  " << r.kappa_closed << " / " << r.kappa_search.kappa << '\n'
              << "  deployed kappa                   " << r.kappa << '\n'
              << "  detector ratio / alarm           " << r.detection.ratio << " / " << yes_no(r.detection.alarm)
              << '\n';
    print_files(r.files);
}

void report(const ddc::Example2Report& r) {
    const auto& st = r.attack.state;
    std::cout << "example2: bilinear plant\n"
              << "  clean gain K*          " << row(r.K_star) << '\n'
              << "  clean cost J*          " << r.J_star << "  (reference " << ddc::kReferenceOptimalCost << ")\n"
              << "  attacked gain K_a      " << row(r.evaluation.K_attacked) << '\n'
              << "  attacked cost J_a      " << r.evaluation.J_attacked << "  (reference "
              << ddc::kReferenceAttackedCost << ")\n"
              << "  ratio J_a / J*         " << r.evaluation.ratio << '\n'
              << "  iterations / stop      " << st.iteration << " / " << to_string(st.stop_reason) << '\n'
              << "  rank condition holds   " << yes_no(r.rank_condition_attacked) << '\n'
              << "  stealthy (Frobenius)   " << yes_no(r.stealthy) << " (ratio " << r.frobenius_ratio << ")\n";
    if (!st.diagnostic.empty()) std::cout << "  note: " << st.diagnostic << '\n';
    print_files(r.files);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Data-driven controller synthesis and stealthy sensor-attack experiments"};
    app.require_subcommand(1);

    // run example1 | example2
    auto* run = app.add_subcommand("run", "Reproduce a numerical scenario end to end");
    run->require_subcommand(1);

    ddc::Example1Config ex1;
    std::string ex1_out;
    double ex1_kappa = 0.0;
    bool ex1_noplots = false;
    auto* run1 = run->add_subcommand("example1", "Destabilizing attack through a fake canonical plant");
    run1->add_option("--gamma", ex1.gamma, "Detector threshold")->check(CLI::PositiveNumber);
    auto* kappa_opt = run1->add_option("--kappa", ex1_kappa, "Fix kappa instead of the closed-form choice")
                          ->check(CLI::Range(1e-300, 1.0));
    run1->add_option("--seed", ex1.seed, "Seed of the excitation input");
    run1->add_option("--horizon", ex1.horizon, "Number of input samples T");
    run1->add_option("--out", ex1_out, "Directory for CSV, JSON and SVG outputs");
    run1->add_flag("--no-plots", ex1_noplots, "Skip SVG rendering");

    ddc::Example2Config ex2;
    std::string ex2_out;
    bool ex2_noplots = false;
    auto* run2 = run->add_subcommand("example2", "Alternating max-min attack on the H2 design");
    run2->add_option("--gamma", ex2.gamma, "Detector threshold")->check(CLI::PositiveNumber);
    run2->add_option("--nmax", ex2.max_iterations, "Alternating iterations")->check(CLI::NonNegativeNumber);
    run2->add_option("--eps", ex2.eps, "Gain-change stopping tolerance")->check(CLI::NonNegativeNumber);
    run2->add_option("--seed", ex2.seed, "Seed of the excitation input");
    run2->add_option("--horizon", ex2.horizon, "Number of input samples T");
    run2->add_option("--out", ex2_out, "Directory for CSV, JSON and SVG outputs");
    run2->add_flag("--no-plots", ex2_noplots, "Skip SVG rendering");

    // sweep kappa
    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps");
    sweep->require_subcommand(1);
    ddc::KappaSweepConfig sw;
    std::string sw_out;
    auto* sweep_kappa = sweep->add_subcommand("kappa", "Fake-plant l2 gain over a log grid of kappa");
    sweep_kappa->add_option("--gamma", sw.gamma, "Detector threshold")->check(CLI::PositiveNumber);
    sweep_kappa->add_option("--horizon", sw.horizon, "Horizon T of the gain");
    sweep_kappa->add_option("--points", sw.points, "Grid size")->check(CLI::PositiveNumber);
    sweep_kappa->add_option("--out", sw_out, "Directory for outputs");

    // probe bias
    auto* probe = app.add_subcommand("probe", "Rank probes");
    probe->require_subcommand(1);
    ddc::BiasProbeConfig bp;
    std::string bp_out;
    auto* probe_bias = probe->add_subcommand("bias", "Constant-bias rank condition and the mitigation input");
    probe_bias->add_option("--seed", bp.seed, "Seed of the excitation input");
    probe_bias->add_option("--horizon", bp.horizon, "Number of input samples T");
    probe_bias->add_option("--out", bp_out, "Directory for outputs");

    // detect FILE
    auto* det = app.add_subcommand("detect", "Run the energy-ratio detector on a saved dataset");
    std::string det_file;
    double det_gamma = 1.0;
    det->add_option("file", det_file, "Dataset (.ddc.csv, .ddc.json or their common stem)")->required();
    det->add_option("--gamma", det_gamma, "Detector threshold")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kPrecondition;
    }

    try {
        if (*run1) {
            if (!ex1_out.empty()) ex1.out_dir = ex1_out;
            if (*kappa_opt) ex1.kappa = ex1_kappa;
            ex1.plots = !ex1_noplots;
            report(ddc::run_example1(ex1));
        } else if (*run2) {
            if (!ex2_out.empty()) ex2.out_dir = ex2_out;
            ex2.plots = !ex2_noplots;
            report(ddc::run_example2(ex2));
        } else if (*sweep_kappa) {
            if (!sw_out.empty()) sw.out_dir = sw_out;
            const auto r = ddc::run_kappa_sweep(sw);
            std::cout << "kappa sweep: delta " << r.delta << ", closed-form kappa " << r.kappa_closed
                      << ", line-search kappa " << r.search.kappa << " (gain " << r.search.gain << ")\n";
            for (const auto& p : r.rows) std::printf("  %-12.6g %-14.8g %-14.8g\n", p.kappa, p.gain, p.linear_bound);
            print_files(r.files);
        } else if (*probe_bias) {
            if (!bp_out.empty()) bp.out_dir = bp_out;
            const auto r = ddc::run_bias_probe(bp);
            std::cout << "bias probe: condition on generic data " << yes_no(r.condition_generic)
                      << ", on mitigation data " << yes_no(r.condition_mitigated) << '\n';
            if (r.critical_mitigated)
                std::cout << "  breaking bias on mitigation data " << *r.critical_mitigated << " (rank "
                          << r.rank_at_critical << ")\n";
            std::cout << "  rho           rank_generic  rank_mitigated\n";
            for (const auto& p : r.rows)
                std::printf("  %-13.6g %-13ld %ld\n", p.rho, static_cast<long>(p.rank_generic),
                            static_cast<long>(p.rank_mitigated));
            print_files(r.files);
        } else if (*det) {
            const auto ds = ddc::load_dataset(det_file);
            const auto d = ddc::detect(ds, ddc::DetectorConfig::identity(ds.n(), det_gamma));
            std::cout << "dataset " << det_file << " (" << ds.provenance().label() << ", T=" << ds.horizon()
                      << ")\n  ratio " << d.ratio << ", threshold " << det_gamma << ", alarm " << yes_no(d.alarm)
                      << '\n';
        }
    } catch (const ddc::Error& e) {
        std::cerr << "ddc: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "ddc: internal error: " << e.what() << '\n';
        return kSolver;
    }
    return kOk;
}
