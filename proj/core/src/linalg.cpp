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
#include "ddc/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ddc {

bool all_finite(const Eigen::Ref<const Matrix>& m) { return m.allFinite(); }

Index numerical_rank(const Eigen::Ref<const Matrix>& m, double rel_tol) {
    if (m.size() == 0) return 0;
    const Vector sv = Eigen::BDCSVD<Matrix>(m).singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return 0;
    const double cutoff = rel_tol * sv(0);
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++rank;
    return rank;
}

double min_symmetric_eigenvalue(const Eigen::Ref<const Matrix>& m) {
    const Matrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double row_space_residual(const Eigen::Ref<const Matrix>& m, const Eigen::Ref<const Eigen::RowVectorXd>& row) {
    const double row_norm = row.norm();
    if (row_norm == 0.0) return 0.0;
    if (m.rows() == 0) return 1.0;
    // Orthonormal basis of the row space from the right singular vectors.
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    Index rank = 0;
    if (sv.size() > 0 && sv(0) > 0.0)
        for (Index i = 0; i < sv.size(); ++i)
            if (sv(i) > kRankTolerance * sv(0)) ++rank;
    const Matrix basis = svd.matrixV().leftCols(rank);
    const Eigen::RowVectorXd residual = row - (row * basis) * basis.transpose();
    return residual.norm() / row_norm;
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

double condition_number(const Eigen::Ref<const Matrix>& m) {
    const Vector sv = Eigen::BDCSVD<Matrix>(m).singularValues();
    if (sv.size() == 0) return std::numeric_limits<double>::infinity();
    const double smallest = sv(sv.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smallest;
}

} // namespace ddc
