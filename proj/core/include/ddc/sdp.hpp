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
#ifndef DDC_SDP_HPP
#define DDC_SDP_HPP

#include <initializer_list>
#include <string>
#include <vector>

#include "ddc/linalg.hpp"

/**
 * Linear-objective semidefinite programs over small dense matrix variables.
 *
 * Every LMI in the library is written through this interface: declare matrix
 * variables, build affine matrix expressions from them, attach PSD blocks,
 * linear equalities and second-order cones, then call solve(). The backend is
 * a primal-dual interior-point method on the block-diagonal LMI form;
 * equalities are eliminated and directions that touch no constraint are
 * projected out before the iteration starts.
 */
namespace ddc::sdp {

/// Handle to a block of scalars inside a Problem's decision vector.
struct Variable {
    std::string name;
    Index rows = 0;
    Index cols = 0;
    Index offset = 0;       ///< first scalar in the decision vector
    bool symmetric = false; ///< stored as the lower triangle only

    Index scalar_count() const noexcept { return symmetric ? rows * (rows + 1) / 2 : rows * cols; }
};

/**
 * @brief rows x cols matrix whose entries are affine in the decision vector y:
 * vec(E(y)) = constant + linear * y (column-major vec).
 *
 * The linear part may be narrower than the full decision vector; missing
 * trailing columns are zero.
 */
class Affine {
public:
    Affine() = default;
    Affine(Index rows, Index cols);

    static Affine constant(const Matrix& value);
    static Affine scalar(double value) { return constant(Matrix::Constant(1, 1, value)); }
    static Affine of(const Variable& v);

    Index rows() const noexcept { return rows_; }
    Index cols() const noexcept { return cols_; }
    Index width() const noexcept { return linear_.cols(); }

    Matrix constant_part() const;
    const Vector& constant_vec() const noexcept { return constant_; }
    const Matrix& linear() const noexcept { return linear_; }

    Matrix evaluate(const Vector& y) const;

    Affine transpose() const;
    Affine symmetrized() const;
    Affine trace() const;
    /// Column vector vec(E).
    Affine vec() const;
    Affine block(Index r, Index c, Index nr, Index nc) const;

    Affine& operator+=(const Affine& other);
    Affine& operator-=(const Affine& other);
    Affine& operator*=(double s);

    friend Affine operator+(Affine a, const Affine& b) { return a += b; }
    friend Affine operator-(Affine a, const Affine& b) { return a -= b; }
    friend Affine operator-(Affine a) { return a *= -1.0; }
    friend Affine operator*(double s, Affine a) { return a *= s; }
    friend Affine operator+(Affine a, const Matrix& c) { return a += constant(c); }
    friend Affine operator-(Affine a, const Matrix& c) { return a -= constant(c); }

    friend Affine operator*(const Matrix& left, const Affine& e);
    friend Affine operator*(const Affine& e, const Matrix& right);

    /// Block matrix from a grid of expressions; rows of the grid must agree in height.
    static Affine grid(std::initializer_list<std::initializer_list<Affine>> blocks);
    static Affine hcat(const std::vector<Affine>& parts);
    static Affine vcat(const std::vector<Affine>& parts);

private:
    void widen(Index width);

    Index rows_ = 0;
    Index cols_ = 0;
    Vector constant_;
    Matrix linear_; ///< (rows*cols) x width
};

enum class Sense { Minimize, Maximize, Feasibility };

struct PsdConstraint {
    Affine expr;   ///< symmetrized before use
    double margin; ///< expr >= margin * I
    std::string label;
};

struct EqualityConstraint {
    Affine expr; ///< expr == 0 entrywise
    std::string label;
};

struct SocConstraint {
    Affine vector; ///< |vec(vector)|_2 <= bound
    Affine bound;  ///< 1 x 1
    std::string label;
};

class Problem {
public:
    Variable add_variable(std::string name, Index rows, Index cols);
    Variable add_symmetric_variable(std::string name, Index dim);

    void minimize(const Affine& objective);
    void maximize(const Affine& objective);

    void add_psd(const Affine& expr, double margin = 0.0, std::string label = {});
    void add_equality(const Affine& expr, std::string label = {});
    void add_soc(const Affine& vector, const Affine& bound, std::string label = {});

    Index scalar_count() const noexcept { return scalars_; }
    const std::vector<Variable>& variables() const noexcept { return variables_; }
    Sense sense() const noexcept { return sense_; }
    const Affine& objective() const noexcept { return objective_; }
    const std::vector<PsdConstraint>& psd_constraints() const noexcept { return psd_; }
    const std::vector<EqualityConstraint>& equalities() const noexcept { return equalities_; }
    const std::vector<SocConstraint>& socs() const noexcept { return socs_; }

    /// Plain-text dump: dimensions plus (row, col, var, value) coefficient triplets.
    std::string dump() const;

private:
    std::vector<Variable> variables_;
    Index scalars_ = 0;
    Sense sense_ = Sense::Feasibility;
    Affine objective_ = Affine::scalar(0.0);
    std::vector<PsdConstraint> psd_;
    std::vector<EqualityConstraint> equalities_;
    std::vector<SocConstraint> socs_;
};

enum class Status { Optimal, Feasible, Infeasible, Inaccurate, Failed };

const char* to_string(Status s) noexcept;

/// True for statuses that carry variable values.
inline bool has_values(Status s) noexcept {
    return s == Status::Optimal || s == Status::Feasible || s == Status::Inaccurate;
}

struct SolveOptions {
    double tolerance = 1e-8;
    int max_iterations = 120;

    /// Default tolerance, overridden by the DDC_SOLVER_TOL environment variable.
    static SolveOptions from_environment();
};

struct SolveReport {
    Status status = Status::Failed;
    Vector y;                   ///< full decision vector (empty without values)
    double objective = 0.0;     ///< in the problem's own sense
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double gap = 0.0;
    double min_psd_slack = 0.0; ///< min over PSD blocks of lambda_min(expr) - margin
    double equality_residual = 0.0;
    int iterations = 0;
    std::string diagnostic;

    /// Value of a declared variable; throws when the report carries no values.
    Matrix value(const Variable& v) const;
};

/// Solves `problem`. Never throws for solver trouble; the report says what happened.
SolveReport solve(const Problem& problem, const SolveOptions& options = SolveOptions::from_environment());

} // namespace ddc::sdp

#endif // DDC_SDP_HPP
