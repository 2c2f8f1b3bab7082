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
#include "ddc/data.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "ddc/error.hpp"

namespace ddc {

namespace {

constexpr const char* kCsvSuffix = ".ddc.csv";
constexpr const char* kJsonSuffix = ".ddc.json";

// Box-Muller over the raw mt19937_64 stream. std::normal_distribution is
// implementation-defined, which would break byte-identical outputs across
// standard libraries.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double(const std::string& field, long line) {
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin < end && *begin == ' ') ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\r')) --end;
    const auto res = std::from_chars(begin, end, value);
    if (res.ec != std::errc() || res.ptr != end)
        throw ParseError("invalid number '" + field + "'", line);
    if (!std::isfinite(value)) throw ParseError("non-finite value '" + field + "'", line);
    return value;
}

} // namespace

const char* to_string(AttackPolicy policy) noexcept {
    switch (policy) {
    case AttackPolicy::FakeSystem: return "fake-system";
    case AttackPolicy::AlternatingH2: return "alternating-h2";
    case AttackPolicy::ConstantBias: return "constant-bias";
    case AttackPolicy::Custom: return "custom";
    }
    return "custom";
}

AttackPolicy attack_policy_from_string(const std::string& s) {
    for (auto p : {AttackPolicy::FakeSystem, AttackPolicy::AlternatingH2, AttackPolicy::ConstantBias,
                   AttackPolicy::Custom})
        if (s == to_string(p)) return p;
    throw_invalid("unknown attack policy '" + s + "'");
}

AttackPlan::AttackPlan(Matrix samples, AttackPolicy policy) : samples_(std::move(samples)), policy_(policy) {
    if (samples_.rows() < 1 || samples_.cols() < 2) throw_invalid("attack needs n >= 1 and T >= 1");
    if (!all_finite(samples_)) throw_invalid("attack samples must be finite");
}

AttackPlan AttackPlan::zero(Index n, Index T, AttackPolicy policy) {
    return {Matrix::Zero(n, T + 1), policy};
}

AttackPlan AttackPlan::constant_bias(Index n, Index T, double rho) {
    return {Matrix::Constant(n, T + 1, rho), AttackPolicy::ConstantBias};
}

AttackPlan AttackPlan::scaled(double factor) const { return {samples_ * factor, policy_}; }

bool shift_consistent(const Matrix& first, const Matrix& second) {
    if (first.rows() != second.rows() || first.cols() != second.cols()) return false;
    const Index T = first.cols();
    if (T < 2) return true;
    return first.rightCols(T - 1) == second.leftCols(T - 1);
}

std::string Provenance::label() const {
    return attacked ? std::string("attacked(") + to_string(*policy) + ")" : "clean";
}

Index minimum_horizon(Index n, Index m) { return (m + 1) * n + m; }

TrajectoryDataset::TrajectoryDataset(Matrix inputs, Matrix measurements, Provenance provenance,
                                     std::optional<std::uint64_t> seed)
    : inputs_(std::move(inputs)), measurements_(std::move(measurements)), provenance_(provenance), seed_(seed) {
    if (inputs_.rows() < 1 || measurements_.rows() < 1) throw_invalid("dataset needs n, m >= 1");
    if (measurements_.cols() != inputs_.cols() + 1)
        throw_invalid("dataset needs T+1 measurements for T inputs");
    if (horizon() < minimum_horizon(n(), m()))
        throw_invalid("dataset horizon T=" + std::to_string(horizon()) + " is below (m+1)n+m=" +
                      std::to_string(minimum_horizon(n(), m())));
    if (!all_finite(inputs_) || !all_finite(measurements_)) throw_invalid("dataset entries must be finite");
    if (provenance_.attacked != provenance_.policy.has_value())
        throw_invalid("attacked provenance must name a policy");
}

bool TrajectoryDataset::operator==(const TrajectoryDataset& other) const {
    return inputs_.rows() == other.inputs_.rows() && inputs_.cols() == other.inputs_.cols() &&
           measurements_.rows() == other.measurements_.rows() &&
           measurements_.cols() == other.measurements_.cols() && inputs_ == other.inputs_ &&
           measurements_ == other.measurements_ && provenance_ == other.provenance_ && seed_ == other.seed_;
}

HankelPair::HankelPair(Matrix X0, Matrix X1, Matrix U0) : X0_(std::move(X0)), X1_(std::move(X1)), U0_(std::move(U0)) {
    if (X0_.rows() != X1_.rows() || X0_.cols() != X1_.cols()) throw_invalid("X0 and X1 must have equal shapes");
    if (U0_.cols() != X0_.cols()) throw_invalid("U0 must have T columns");
    if (X0_.rows() < 1 || U0_.rows() < 1 || X0_.cols() < 1) throw_invalid("empty Hankel data");
    if (!shift_consistent(X0_, X1_)) throw_invalid("X0 and X1 are not shifts of one sequence");
}

HankelPair HankelPair::attacked(const AttackPlan& plan) const {
    if (plan.n() != n() || plan.horizon() != horizon()) throw_invalid("attack horizon does not match data");
    return {X0_ + plan.A0(), X1_ + plan.A1(), U0_};
}

Matrix hankel(const Matrix& signal, Index i, Index t, Index N) {
    if (i < 0 || t < 1 || N < 1) throw_invalid("hankel needs i >= 0, t >= 1, N >= 1");
    if (i + t - 1 + N > signal.cols())
        throw_invalid("signal too short for the requested Hankel matrix");
    const Index d = signal.rows();
    Matrix H(d * t, N);
    for (Index r = 0; r < t; ++r)
        H.middleRows(r * d, d) = signal.middleCols(i + r, N);
    return H;
}

bool is_pe(const Matrix& inputs, Index order) {
    if (order < 1) throw_invalid("PE order must be >= 1");
    const Index T = inputs.cols();
    const Index m = inputs.rows();
    const Index cols = T - order + 1;
    if (cols < order * m)
        throw_invalid("horizon T=" + std::to_string(T) + " too short to test PE of order " +
                      std::to_string(order));
    return numerical_rank(hankel(inputs, 0, order, cols)) == order * m;
}

Matrix gen_pe_input(Index m, Index T, Index order, std::uint64_t seed) {
    if (m < 1 || order < 1) throw_invalid("gen_pe_input needs m >= 1 and order >= 1");
    if (T < (order + 1) * m + order - 1)
        throw_invalid("horizon T=" + std::to_string(T) + " below (L+1)m+L-1 for PE order " +
                      std::to_string(order));
    NormalStream normal(seed);
    for (int attempt = 0; attempt < 10; ++attempt) {
        Matrix u(m, T);
        for (Index k = 0; k < T; ++k)
            for (Index i = 0; i < m; ++i) u(i, k) = normal.next();
        if (is_pe(u, order)) return u;
    }
    throw Error(ErrorKind::GenerationFailure, "no persistently exciting draw after 10 attempts");
}

TrajectoryDataset collect_dataset(const SystemRealization& sys, const Matrix& inputs,
                                  const std::optional<AttackPlan>& attack, std::optional<std::uint64_t> seed) {
    const StateTrajectory traj = simulate(sys, inputs, Vector::Zero(sys.n()));
    if (!attack) return {traj.inputs, traj.states, Provenance::clean(), seed};
    if (attack->n() != sys.n() || attack->horizon() != inputs.cols())
        throw_invalid("attack horizon does not match input horizon");
    return {traj.inputs, traj.states + attack->samples(), Provenance::attacked_by(attack->policy()), seed};
}

TrajectoryDataset apply_attack(const TrajectoryDataset& clean, const AttackPlan& plan) {
    if (plan.n() != clean.n() || plan.horizon() != clean.horizon())
        throw_invalid("attack horizon does not match dataset");
    return {clean.inputs(), clean.measurements() + plan.samples(), Provenance::attacked_by(plan.policy()),
            clean.seed()};
}

HankelPair to_hankel(const TrajectoryDataset& ds) {
    const Index T = ds.horizon();
    return {ds.measurements().leftCols(T), ds.measurements().rightCols(T), ds.inputs()};
}

std::filesystem::path dataset_stem(const std::filesystem::path& path) {
    std::string s = path.string();
    for (const std::string suffix : {kCsvSuffix, kJsonSuffix})
        if (ends_with(s, suffix)) return s.substr(0, s.size() - suffix.size());
    return path;
}

void save_dataset(const TrajectoryDataset& ds, const std::filesystem::path& stem_in) {
    const std::string stem = dataset_stem(stem_in).string();
    const Index n = ds.n();
    const Index m = ds.m();
    const Index T = ds.horizon();

    std::ofstream csv(stem + kCsvSuffix, std::ios::binary);
    if (!csv) throw Error(ErrorKind::Io, "cannot write " + stem + kCsvSuffix);
    csv << 'k';
    for (Index i = 0; i < m; ++i) csv << ",u_" << (i + 1);
    for (Index i = 0; i < n; ++i) csv << ",x_" << (i + 1);
    csv << '\n';
    for (Index k = 0; k <= T; ++k) {
        csv << k;
        for (Index i = 0; i < m; ++i) {
            csv << ',';
            if (k < T) csv << format_double(ds.inputs()(i, k));
        }
        for (Index i = 0; i < n; ++i) csv << ',' << format_double(ds.measurements()(i, k));
        csv << '\n';
    }
    if (!csv) throw Error(ErrorKind::Io, "write failed for " + stem + kCsvSuffix);

    nlohmann::ordered_json meta;
    meta["format"] = "ddc-dataset";
    meta["version"] = 1;
    meta["n"] = n;
    meta["m"] = m;
    meta["T"] = T;
    meta["provenance"] = {{"attacked", ds.provenance().attacked},
                          {"policy", ds.provenance().policy ? nlohmann::ordered_json(to_string(*ds.provenance().policy))
                                                            : nlohmann::ordered_json(nullptr)}};
    meta["seed"] = ds.seed() ? nlohmann::ordered_json(*ds.seed()) : nlohmann::ordered_json(nullptr);
    std::ofstream json(stem + kJsonSuffix, std::ios::binary);
    if (!json) throw Error(ErrorKind::Io, "cannot write " + stem + kJsonSuffix);
    json << meta.dump(2) << '\n';
    if (!json) throw Error(ErrorKind::Io, "write failed for " + stem + kJsonSuffix);
}

TrajectoryDataset load_dataset(const std::filesystem::path& path) {
    const std::string stem = dataset_stem(path).string();

    std::ifstream json_in(stem + kJsonSuffix);
    if (!json_in) throw Error(ErrorKind::Io, "cannot open " + stem + kJsonSuffix);
    nlohmann::json meta;
    try {
        json_in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("sidecar: ") + e.what(), 0);
    }
    Index n = 0, m = 0, T = 0;
    Provenance provenance;
    std::optional<std::uint64_t> seed;
    try {
        n = meta.at("n").get<Index>();
        m = meta.at("m").get<Index>();
        T = meta.at("T").get<Index>();
        const auto& prov = meta.at("provenance");
        provenance.attacked = prov.at("attacked").get<bool>();
        if (!prov.at("policy").is_null()) provenance.policy = attack_policy_from_string(prov.at("policy").get<std::string>());
        if (meta.contains("seed") && !meta.at("seed").is_null()) seed = meta.at("seed").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("sidecar: ") + e.what(), 0);
    } catch (const Error& e) {
        throw ParseError(std::string("sidecar: ") + e.what(), 0);
    }
    if (n < 1 || m < 1 || T < 1) throw ParseError("sidecar: dimensions must be positive", 0);

    std::ifstream csv(stem + kCsvSuffix);
    if (!csv) throw Error(ErrorKind::Io, "cannot open " + stem + kCsvSuffix);
    std::string line;
    long line_no = 0;
    if (!std::getline(csv, line)) throw ParseError("missing header", 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv(line);
    std::vector<std::string> expected{"k"};
    for (Index i = 0; i < m; ++i) expected.push_back("u_" + std::to_string(i + 1));
    for (Index i = 0; i < n; ++i) expected.push_back("x_" + std::to_string(i + 1));
    if (header != expected) {
        std::string want;
        for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
        throw ParseError("header mismatch, expected '" + want + "'", line_no);
    }

    Matrix inputs(m, T);
    Matrix measurements(n, T + 1);
    Index k = 0;
    while (std::getline(csv, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != expected.size())
            throw ParseError("expected " + std::to_string(expected.size()) + " columns, got " +
                                 std::to_string(fields.size()),
                             line_no);
        if (k > T) throw ParseError("more rows than T+1", line_no);
        if (parse_double(fields[0], line_no) != static_cast<double>(k))
            throw ParseError("row index out of sequence", line_no);
        for (Index i = 0; i < m; ++i) {
            const auto& f = fields[static_cast<std::size_t>(1 + i)];
            if (k < T) {
                inputs(i, k) = parse_double(f, line_no);
            } else if (!f.empty()) {
                throw ParseError("input given at k=T", line_no);
            }
        }
        for (Index i = 0; i < n; ++i)
            measurements(i, k) = parse_double(fields[static_cast<std::size_t>(1 + m + i)], line_no);
        ++k;
    }
    if (k != T + 1) throw ParseError("expected " + std::to_string(T + 1) + " rows, got " + std::to_string(k), line_no);
    try {
        return {std::move(inputs), std::move(measurements), provenance, seed};
    } catch (const Error& e) {
        throw ParseError(e.what(), 0);
    }
}

} // namespace ddc
