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
#ifndef DDC_DATA_HPP
#define DDC_DATA_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ddc/linalg.hpp"
#include "ddc/lti.hpp"

namespace ddc {

/// Which adversary policy produced an attack.
enum class AttackPolicy { FakeSystem, AlternatingH2, ConstantBias, Custom };

const char* to_string(AttackPolicy policy) noexcept;
AttackPolicy attack_policy_from_string(const std::string& s);

/**
 * @brief Attack samples a[0..T] (n x (T+1), one per column) injected on the
 * measurement channel, x~[k] = x[k] + a[k].
 *
 * The shifted Hankel images are views of the same sample sequence, so
 * A0 = [a[0..T-1]] and A1 = [a[1..T]] always overlap consistently.
 */
class AttackPlan {
public:
    AttackPlan(Matrix samples, AttackPolicy policy);

    static AttackPlan zero(Index n, Index T, AttackPolicy policy = AttackPolicy::Custom);
    /// a[k] = rho * 1 for every k.
    static AttackPlan constant_bias(Index n, Index T, double rho);

    const Matrix& samples() const noexcept { return samples_; }
    AttackPolicy policy() const noexcept { return policy_; }
    Index n() const noexcept { return samples_.rows(); }
    Index horizon() const noexcept { return samples_.cols() - 1; }

    Matrix A0() const { return samples_.leftCols(horizon()); }
    Matrix A1() const { return samples_.rightCols(horizon()); }

    AttackPlan scaled(double factor) const;

private:
    Matrix samples_;
    AttackPolicy policy_;
};

/// True when columns 1..T-1 of `first` equal columns 0..T-2 of `second` exactly.
bool shift_consistent(const Matrix& first, const Matrix& second);

struct Provenance {
    bool attacked = false;
    std::optional<AttackPolicy> policy; ///< set iff attacked

    static Provenance clean() { return {}; }
    static Provenance attacked_by(AttackPolicy p) { return {true, p}; }
    std::string label() const;

    bool operator==(const Provenance&) const = default;
};

/**
 * @brief The operator's training data: inputs u[0..T-1] and (possibly
 * corrupted) measurements x~[0..T].
 *
 * Construction enforces T >= (m+1) n + m and finiteness.
 */
class TrajectoryDataset {
public:
    TrajectoryDataset(Matrix inputs, Matrix measurements, Provenance provenance,
                      std::optional<std::uint64_t> seed = std::nullopt);

    const Matrix& inputs() const noexcept { return inputs_; }
    const Matrix& measurements() const noexcept { return measurements_; }
    const Provenance& provenance() const noexcept { return provenance_; }
    const std::optional<std::uint64_t>& seed() const noexcept { return seed_; }

    Index n() const noexcept { return measurements_.rows(); }
    Index m() const noexcept { return inputs_.rows(); }
    Index horizon() const noexcept { return inputs_.cols(); }

    bool operator==(const TrajectoryDataset& other) const;

private:
    Matrix inputs_;
    Matrix measurements_;
    Provenance provenance_;
    std::optional<std::uint64_t> seed_;
};

/// Minimum dataset length (m+1) n + m for PE inputs of order n+1.
Index minimum_horizon(Index n, Index m);

/**
 * @brief Shifted data matrices X0 = [x~[0..T-1]], X1 = [x~[1..T]], U0 = [u[0..T-1]].
 *
 * The constructor rejects pairs whose X0/X1 columns do not overlap.
 */
class HankelPair {
public:
    HankelPair(Matrix X0, Matrix X1, Matrix U0);

    const Matrix& X0() const noexcept { return X0_; }
    const Matrix& X1() const noexcept { return X1_; }
    const Matrix& U0() const noexcept { return U0_; }
    Index n() const noexcept { return X0_.rows(); }
    Index m() const noexcept { return U0_.rows(); }
    Index horizon() const noexcept { return X0_.cols(); }

    /// Data seen after adding `plan`'s Hankel images to X0 and X1.
    HankelPair attacked(const AttackPlan& plan) const;

private:
    Matrix X0_;
    Matrix X1_;
    Matrix U0_;
};

/**
 * @brief Block Hankel matrix of a vector signal (one sample per column).
 *
 * Returns the (dim*t) x N matrix whose column j stacks samples i+j .. i+j+t-1.
 */
Matrix hankel(const Matrix& signal, Index i, Index t, Index N);

/**
 * @brief Persistency of excitation of order L: the depth-L Hankel matrix of u
 * with T-L+1 columns has full row rank L*m.
 *
 * Throws InvalidArgument when T-L+1 < L*m, since the test is then undecidable
 * rather than negative.
 */
bool is_pe(const Matrix& inputs, Index order);

/**
 * @brief Seeded i.i.d. standard-normal input of length T, redrawn until is_pe holds.
 *
 * Requires T >= (L+1) m + L - 1. The sequence depends only on (m, T, seed).
 */
Matrix gen_pe_input(Index m, Index T, Index order, std::uint64_t seed);

/// Runs the plant from x[0] = 0 and records x~[k] = x[k] + a[k].
TrajectoryDataset collect_dataset(const SystemRealization& sys, const Matrix& inputs,
                                  const std::optional<AttackPlan>& attack = std::nullopt,
                                  std::optional<std::uint64_t> seed = std::nullopt);

/// Measurements corrupted by `plan`, with provenance updated.
TrajectoryDataset apply_attack(const TrajectoryDataset& clean, const AttackPlan& plan);

HankelPair to_hankel(const TrajectoryDataset& ds);

/**
 * @brief Writes `<stem>.ddc.csv` (header k,u_1..u_m,x_1..x_n) and the
 * `<stem>.ddc.json` metadata sidecar. Values use shortest round-trip formatting.
 */
void save_dataset(const TrajectoryDataset& ds, const std::filesystem::path& stem);

/// Reads a dataset written by save_dataset. Accepts the stem or either file path.
TrajectoryDataset load_dataset(const std::filesystem::path& path);

/// Strips a trailing `.ddc.csv` / `.ddc.json` to recover the dataset stem.
std::filesystem::path dataset_stem(const std::filesystem::path& path);

} // namespace ddc

#endif // DDC_DATA_HPP
