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
#include <algorithm>
#include <sstream>

#include "ddc/error.hpp"
#include "ddc/sdp.hpp"

namespace ddc::sdp {

Affine::Affine(Index rows, Index cols)
    : rows_(rows), cols_(cols), constant_(Vector::Zero(rows * cols)), linear_(rows * cols, 0) {}

Affine Affine::constant(const Matrix& value) {
    Affine a(value.rows(), value.cols());
    a.constant_ = Eigen::Map<const Vector>(value.data(), value.size());
    return a;
}

Affine Affine::of(const Variable& v) {
    Affine a(v.rows, v.cols);
    a.linear_ = Matrix::Zero(v.rows * v.cols, v.offset + v.scalar_count());
    for (Index j = 0; j < v.cols; ++j) {
        for (Index i = 0; i < v.rows; ++i) {
            Index scalar = 0;
            if (v.symmetric) {
                const Index r = std::max(i, j);
                const Index c = std::min(i, j);
                scalar = c * v.rows - c * (c - 1) / 2 + (r - c);
            } else {
                scalar = i + j * v.rows;
            }
            a.linear_(i + j * v.rows, v.offset + scalar) = 1.0;
        }
    }
    return a;
}

Matrix Affine::constant_part() const { return Eigen::Map<const Matrix>(constant_.data(), rows_, cols_); }

Matrix Affine::evaluate(const Vector& y) const {
    Vector v = constant_;
    const Index w = std::min<Index>(width(), y.size());
    if (w > 0) v += linear_.leftCols(w) * y.head(w);
    return Eigen::Map<const Matrix>(v.data(), rows_, cols_);
}

void Affine::widen(Index w) {
    if (w <= width()) return;
    const Index old = width();
    linear_.conservativeResize(Eigen::NoChange, w);
    linear_.rightCols(w - old).setZero();
}

Affine Affine::transpose() const {
    Affine t(cols_, rows_);
    t.linear_.resize(rows_ * cols_, width());
    for (Index j = 0; j < cols_; ++j) {
        for (Index i = 0; i < rows_; ++i) {
            const Index src = i + j * rows_;
            const Index dst = j + i * cols_;
            t.constant_(dst) = constant_(src);
            t.linear_.row(dst) = linear_.row(src);
        }
    }
    return t;
}

Affine Affine::symmetrized() const {
    if (rows_ != cols_) throw_invalid("only square expressions can be symmetrized");
    Affine s = *this;
    s += transpose();
    s *= 0.5;
    return s;
}

Affine Affine::trace() const {
    if (rows_ != cols_) throw_invalid("trace of a non-square expression");
    Affine t(1, 1);
    t.linear_ = Matrix::Zero(1, width());
    for (Index i = 0; i < rows_; ++i) {
        t.constant_(0) += constant_(i + i * rows_);
        t.linear_.row(0) += linear_.row(i + i * rows_);
    }
    return t;
}

Affine Affine::vec() const {
    Affine v = *this;
    v.rows_ = rows_ * cols_;
    v.cols_ = 1;
    return v;
}

Affine Affine::block(Index r, Index c, Index nr, Index nc) const {
    if (r < 0 || c < 0 || r + nr > rows_ || c + nc > cols_) throw_invalid("block out of range");
    Affine b(nr, nc);
    b.linear_.resize(nr * nc, width());
    for (Index j = 0; j < nc; ++j)
        for (Index i = 0; i < nr; ++i) {
            const Index src = (r + i) + (c + j) * rows_;
            b.constant_(i + j * nr) = constant_(src);
            b.linear_.row(i + j * nr) = linear_.row(src);
        }
    return b;
}

Affine& Affine::operator+=(const Affine& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw_invalid("affine shape mismatch in +");
    widen(other.width());
    constant_ += other.constant_;
    linear_.leftCols(other.width()) += other.linear_;
    return *this;
}

Affine& Affine::operator-=(const Affine& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw_invalid("affine shape mismatch in -");
    widen(other.width());
    constant_ -= other.constant_;
    linear_.leftCols(other.width()) -= other.linear_;
    return *this;
}

Affine& Affine::operator*=(double s) {
    constant_ *= s;
    linear_ *= s;
    return *this;
}

Affine operator*(const Matrix& left, const Affine& e) {
    if (left.cols() != e.rows_) throw_invalid("affine shape mismatch in left product");
    const Index r = left.rows();
    const Index c = e.cols_;
    Affine out(r, c);
    const Matrix base = left * e.constant_part();
    out.constant_ = Eigen::Map<const Vector>(base.data(), base.size());
    const Index w = e.width();
    out.linear_.resize(r * c, w);
    if (w > 0 && c > 0) {
        // Column k of the linear part is an e.rows x c block; all blocks side by side.
        Eigen::Map<const Matrix> stacked(e.linear_.data(), e.rows_, c * w);
        Matrix product = left * stacked;
        out.linear_ = Eigen::Map<const Matrix>(product.data(), r * c, w);
    }
    return out;
}

Affine operator*(const Affine& e, const Matrix& right) {
    if (right.rows() != e.cols_) throw_invalid("affine shape mismatch in right product");
    const Index r = e.rows_;
    const Index c = right.cols();
    Affine out(r, c);
    const Matrix base = e.constant_part() * right;
    out.constant_ = Eigen::Map<const Vector>(base.data(), base.size());
    const Index w = e.width();
    out.linear_.resize(r * c, w);
    for (Index k = 0; k < w; ++k) {
        Eigen::Map<const Matrix> coeff(e.linear_.col(k).data(), r, e.cols_);
        const Matrix prod = coeff * right;
        out.linear_.col(k) = Eigen::Map<const Vector>(prod.data(), prod.size());
    }
    return out;
}

Affine Affine::hcat(const std::vector<Affine>& parts) {
    if (parts.empty()) throw_invalid("hcat of nothing");
    const Index r = parts.front().rows_;
    Index c = 0;
    Index w = 0;
    for (const auto& p : parts) {
        if (p.rows_ != r) throw_invalid("hcat height mismatch");
        c += p.cols_;
        w = std::max(w, p.width());
    }
    Affine out(r, c);
    out.linear_ = Matrix::Zero(r * c, w);
    Index offset = 0;
    for (const auto& p : parts) {
        // Column-major: horizontally adjacent blocks are contiguous.
        out.constant_.segment(offset, p.constant_.size()) = p.constant_;
        out.linear_.block(offset, 0, p.linear_.rows(), p.width()) = p.linear_;
        offset += p.rows_ * p.cols_;
    }
    return out;
}

Affine Affine::vcat(const std::vector<Affine>& parts) {
    if (parts.empty()) throw_invalid("vcat of nothing");
    std::vector<Affine> transposed;
    transposed.reserve(parts.size());
    for (const auto& p : parts) transposed.push_back(p.transpose());
    return hcat(transposed).transpose();
}

Affine Affine::grid(std::initializer_list<std::initializer_list<Affine>> blocks) {
    std::vector<Affine> rows;
    for (const auto& row : blocks) rows.push_back(hcat(std::vector<Affine>(row)));
    return vcat(rows);
}

Variable Problem::add_variable(std::string name, Index rows, Index cols) {
    if (rows < 1 || cols < 1) throw_invalid("variable dimensions must be positive");
    Variable v{std::move(name), rows, cols, scalars_, false};
    scalars_ += v.scalar_count();
    variables_.push_back(v);
    return v;
}

Variable Problem::add_symmetric_variable(std::string name, Index dim) {
    if (dim < 1) throw_invalid("variable dimensions must be positive");
    Variable v{std::move(name), dim, dim, scalars_, true};
    scalars_ += v.scalar_count();
    variables_.push_back(v);
    return v;
}

void Problem::minimize(const Affine& objective) {
    if (objective.rows() != 1 || objective.cols() != 1) throw_invalid("objective must be scalar");
    objective_ = objective;
    sense_ = Sense::Minimize;
}

void Problem::maximize(const Affine& objective) {
    if (objective.rows() != 1 || objective.cols() != 1) throw_invalid("objective must be scalar");
    objective_ = objective;
    sense_ = Sense::Maximize;
}

void Problem::add_psd(const Affine& expr, double margin, std::string label) {
    if (expr.rows() != expr.cols()) throw_invalid("PSD constraint needs a square expression");
    if (expr.width() > scalars_) throw_invalid("PSD constraint references undeclared variables");
    psd_.push_back({expr, margin, std::move(label)});
}

void Problem::add_equality(const Affine& expr, std::string label) {
    if (expr.width() > scalars_) throw_invalid("equality references undeclared variables");
    equalities_.push_back({expr, std::move(label)});
}

void Problem::add_soc(const Affine& vector, const Affine& bound, std::string label) {
    if (bound.rows() != 1 || bound.cols() != 1) throw_invalid("cone bound must be scalar");
    if (vector.width() > scalars_ || bound.width() > scalars_)
        throw_invalid("cone references undeclared variables");
    socs_.push_back({vector.vec(), bound, std::move(label)});
}

namespace {

void dump_affine(std::ostringstream& os, const Affine& a) {
    os << "  shape " << a.rows() << ' ' << a.cols() << '\n';
    for (Index i = 0; i < a.constant_vec().size(); ++i)
        if (a.constant_vec()(i) != 0.0)
            os << "  c " << i % a.rows() << ' ' << i / a.rows() << ' ' << a.constant_vec()(i) << '\n';
    for (Index k = 0; k < a.width(); ++k)
        for (Index i = 0; i < a.linear().rows(); ++i)
            if (a.linear()(i, k) != 0.0)
                os << "  t " << i % a.rows() << ' ' << i / a.rows() << ' ' << k << ' ' << a.linear()(i, k) << '\n';
}

} // namespace

std::string Problem::dump() const {
    std::ostringstream os;
    os.precision(17);
    os << "ddc-sdp 1\n";
    os << "scalars " << scalars_ << '\n';
    for (const auto& v : variables_)
        os << "variable " << v.name << ' ' << v.rows << ' ' << v.cols << ' ' << v.offset << ' '
           << (v.symmetric ? "symmetric" : "general") << '\n';
    os << "objective " << (sense_ == Sense::Minimize ? "min" : sense_ == Sense::Maximize ? "max" : "feasibility")
       << '\n';
    dump_affine(os, objective_);
    for (const auto& c : psd_) {
        os << "psd " << (c.label.empty() ? "-" : c.label) << " margin " << c.margin << '\n';
        dump_affine(os, c.expr);
    }
    for (const auto& c : equalities_) {
        os << "equality " << (c.label.empty() ? "-" : c.label) << '\n';
        dump_affine(os, c.expr);
    }
    for (const auto& c : socs_) {
        os << "soc " << (c.label.empty() ? "-" : c.label) << '\n';
        dump_affine(os, c.vector);
        dump_affine(os, c.bound);
    }
    return os.str();
}

} // namespace ddc::sdp
