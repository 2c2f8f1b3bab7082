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
#ifndef DDC_LINALG_HPP
#define DDC_LINALG_HPP

#include <Eigen/Dense>

namespace ddc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Relative singular-value cutoff shared by every rank decision in the library.
inline constexpr double kRankTolerance = 1e-8;

/// Closed loops with spectral radius below 1 - kSchurMargin count as stable.
inline constexpr double kSchurMargin = 1e-9;

bool all_finite(const Eigen::Ref<const Matrix>& m);

/// Rank of `m` counting singular values above kRankTolerance * sigma_max.
Index numerical_rank(const Eigen::Ref<const Matrix>& m, double rel_tol = kRankTolerance);

/// Smallest eigenvalue of the symmetric part of a square matrix.
double min_symmetric_eigenvalue(const Eigen::Ref<const Matrix>& m);

/// Distance of the row vector `row` from the row space of `m`, relative to |row|.
double row_space_residual(const Eigen::Ref<const Matrix>& m, const Eigen::Ref<const Eigen::RowVectorXd>& row);

/// Block-diagonal concatenation [a 0; 0 b].
Matrix block_diag(const Matrix& a, const Matrix& b);

/// 2-norm condition number; +inf for singular matrices.
double condition_number(const Eigen::Ref<const Matrix>& m);

} // namespace ddc

#endif // DDC_LINALG_HPP
