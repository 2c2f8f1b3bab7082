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
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ddc/error.hpp"
#include "ddc/sdp.hpp"

namespace ddc::sdp {

const char* to_string(Status s) noexcept {
    switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Feasible: return "feasible";
    case Status::Infeasible: return "infeasible";
    case Status::Inaccurate: return "inaccurate";
    case Status::Failed: return "failed";
    }
    return "unknown";
}

SolveOptions SolveOptions::from_environment() {
    SolveOptions options;
    if (const char* env = std::getenv("DDC_SOLVER_TOL")) {
        char* end = nullptr;
        const double tol = std::strtod(env, &end);
        if (end != env && std::isfinite(tol) && tol > 0.0 && tol < 1.0) options.tolerance = tol;
    }
    return options;
}

Matrix SolveReport::value(const Variable& v) const {
    if (y.size() < v.offset + v.scalar_count())
        throw Error(ErrorKind::NumericalFailure, "solver report carries no value for '" + v.name + "'");
    Matrix out(v.rows, v.cols);
    if (!v.symmetric) {
        out = Eigen::Map<const Matrix>(y.data() + v.offset, v.rows, v.cols);
        return out;
    }
    Index k = v.offset;
    for (Index j = 0; j < v.cols; ++j)
        for (Index i = j; i < v.rows; ++i) {
            out(i, j) = y(k);
            out(j, i) = y(k);
            ++k;
        }
    return out;
}

namespace {

// One LMI block in vec form: vec(F(y)) = c + lin * y, already symmetric.
struct VecBlock {
    Index dim = 0;
    Vector c;
    Matrix lin;
};

Matrix padded_linear(const Affine& a, Index width) {
    Matrix lin = Matrix::Zero(a.rows() * a.cols(), width);
    lin.leftCols(a.width()) = a.linear();
    return lin;
}

VecBlock psd_block(const PsdConstraint& con, Index width) {
    const Index d = con.expr.rows();
    VecBlock b{d, con.expr.constant_vec(), padded_linear(con.expr, width)};
    VecBlock s{d, Vector(d * d), Matrix(d * d, width)};
    for (Index j = 0; j < d; ++j)
        for (Index i = 0; i < d; ++i) {
            s.c(i + j * d) = 0.5 * (b.c(i + j * d) + b.c(j + i * d));
            s.lin.row(i + j * d) = 0.5 * (b.lin.row(i + j * d) + b.lin.row(j + i * d));
        }
    for (Index i = 0; i < d; ++i) s.c(i + i * d) -= con.margin;
    return s;
}

// Arrow matrix [t I, v; v', t] is PSD exactly when |v| <= t.
VecBlock soc_block(const SocConstraint& con, Index width) {
    const Index len = con.vector.rows() * con.vector.cols();
    const Index d = len + 1;
    VecBlock s{d, Vector::Zero(d * d), Matrix::Zero(d * d, width)};
    const Matrix vlin = padded_linear(con.vector, width);
    const Matrix tlin = padded_linear(con.bound, width);
    for (Index i = 0; i < d; ++i) {
        s.c(i + i * d) = con.bound.constant_vec()(0);
        s.lin.row(i + i * d) = tlin.row(0);
    }
    for (Index i = 0; i < len; ++i) {
        s.c(i + len * d) = s.c(len + i * d) = con.vector.constant_vec()(i);
        s.lin.row(i + len * d) = vlin.row(i);
        s.lin.row(len + i * d) = vlin.row(i);
    }
    return s;
}

Matrix unvec(const Vector& v, Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

Vector vec_of(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

double min_eig(const Matrix& m) {
    if (m.size() == 0) return std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Block-diagonal SDP in dual form: max b'w s.t. Z = C - sum_i w_i A_i >= 0.
class InteriorPoint {
public:
    InteriorPoint(std::vector<Matrix> C, std::vector<Matrix> A, Vector b)
        : C_(std::move(C)), A_(std::move(A)), b_(std::move(b)) {
        dims_.reserve(C_.size());
        for (const auto& c : C_) {
            dims_.push_back(c.rows());
            total_dim_ += c.rows();
        }
    }

    struct Result {
        Vector w;
        double pinf = 0.0;
        double dinf = 0.0;
        double gap = 0.0;
        int iterations = 0;
        bool converged = false;
        bool infeasible = false;
        bool unbounded = false;
        bool stalled = false;
    };

    Result run(double tol, int max_iterations) {
        const Index m = b_.size();
        double normC = 0.0;
        for (const auto& c : C_) normC += c.squaredNorm();
        normC = std::sqrt(normC);
        const double normb = b_.norm();

        double maxA = 0.0;
        for (Index i = 0; i < m; ++i) {
            double s = 0.0;
            for (const auto& a : A_) s += a.col(i).squaredNorm();
            maxA = std::max(maxA, std::sqrt(s));
        }
        const double sqn = std::sqrt(static_cast<double>(total_dim_));
        double xi = std::max(10.0, sqn);
        for (Index i = 0; i < m; ++i) xi = std::max(xi, sqn * (1.0 + std::abs(b_(i))) / (1.0 + maxA));
        const double eta = std::max({10.0, sqn, maxA, normC});

        std::vector<Matrix> X, Z;
        for (Index d : dims_) {
            X.push_back(xi * Matrix::Identity(d, d));
            Z.push_back(eta * Matrix::Identity(d, d));
        }
        Vector y = Vector::Zero(m);

        Result res;
        int stalls = 0;
        for (int it = 0; it <= max_iterations; ++it) {
            res.iterations = it;
            const Vector AX = apply(X);
            const Vector Rp = b_ - AX;
            std::vector<Matrix> Rd = adjoint(y);
            double rd_norm = 0.0;
            for (size_t k = 0; k < Rd.size(); ++k) {
                Rd[k] = C_[k] - Rd[k] - Z[k];
                rd_norm += Rd[k].squaredNorm();
            }
            rd_norm = std::sqrt(rd_norm);
            const double pobj = inner(C_, X);
            const double dobj = b_.dot(y);
            res.pinf = Rp.norm() / (1.0 + normb);
            res.dinf = rd_norm / (1.0 + normC);
            res.gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
            res.w = y;
            if (res.pinf < tol && res.dinf < tol && res.gap < tol) {
                res.converged = true;
                return res;
            }
            if (it == max_iterations) break;

            // Certificates: a PSD X with A(X) ~ 0 and <C,X> < 0 proves the LMI empty;
            // a growing y with A*(y) <= 0 and b'y > 0 proves the objective unbounded.
            if (pobj < 0.0 && AX.norm() / std::abs(pobj) < 1e-8 && it > 5) {
                res.infeasible = true;
                return res;
            }
            if (dobj > 0.0 && it > 5) {
                double r = 0.0;
                for (size_t k = 0; k < Rd.size(); ++k) r += (C_[k] - Rd[k]).squaredNorm();
                if (std::sqrt(r) / dobj < 1e-8 && y.norm() > 1e8) {
                    res.unbounded = true;
                    return res;
                }
            }

            const double mu = inner(X, Z) / static_cast<double>(total_dim_);
            std::vector<Matrix> Zinv;
            Zinv.reserve(Z.size());
            for (const auto& z : Z) {
                Eigen::LLT<Matrix> llt(z);
                if (llt.info() != Eigen::Success) return res;
                Zinv.push_back(llt.solve(Matrix::Identity(z.rows(), z.cols())));
            }

            Matrix M = Matrix::Zero(m, m);
            for (size_t k = 0; k < A_.size(); ++k) {
                const Index d = dims_[k];
                Matrix T(d * d, m);
                for (Index j = 0; j < m; ++j) {
                    const Matrix Aj = unvec(A_[k].col(j), d);
                    T.col(j) = vec_of(X[k] * Aj * Zinv[k]);
                }
                M.noalias() += A_[k].transpose() * T;
            }
            M = (0.5 * (M + M.transpose())).eval();
            Eigen::LDLT<Matrix> ldlt(M);
            if (ldlt.info() != Eigen::Success) return res;

            std::vector<Matrix> XRdZ(X.size());
            for (size_t k = 0; k < X.size(); ++k) XRdZ[k] = X[k] * Rd[k] * Zinv[k];
            const Vector base_rhs = b_ + apply(XRdZ);

            auto direction = [&](const std::vector<Matrix>* H, Vector& dy, std::vector<Matrix>& dX,
                                 std::vector<Matrix>& dZ) {
                Vector rhs = base_rhs;
                std::vector<Matrix> HZ;
                if (H != nullptr) {
                    HZ.resize(X.size());
                    for (size_t k = 0; k < X.size(); ++k) HZ[k] = (*H)[k] * Zinv[k];
                    rhs -= apply(HZ);
                }
                dy = ldlt.solve(rhs);
                dZ = adjoint(dy);
                dX.resize(X.size());
                for (size_t k = 0; k < X.size(); ++k) {
                    dZ[k] = Rd[k] - dZ[k];
                    Matrix d = -X[k] - X[k] * dZ[k] * Zinv[k];
                    if (H != nullptr) d += HZ[k];
                    dX[k] = 0.5 * (d + d.transpose());
                }
            };

            Vector dy;
            std::vector<Matrix> dX, dZ;
            direction(nullptr, dy, dX, dZ);
            const double ap = std::min(1.0, max_step(X, dX));
            const double ad = std::min(1.0, max_step(Z, dZ));
            double mu_aff = 0.0;
            for (size_t k = 0; k < X.size(); ++k)
                mu_aff += ((X[k] + ap * dX[k]).cwiseProduct(Z[k] + ad * dZ[k])).sum();
            mu_aff /= static_cast<double>(total_dim_);
            const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

            std::vector<Matrix> H(X.size());
            for (size_t k = 0; k < X.size(); ++k)
                H[k] = sigma * mu * Matrix::Identity(dims_[k], dims_[k]) - dX[k] * dZ[k];
            direction(&H, dy, dX, dZ);

            const double amp = max_step(X, dX);
            const double amd = max_step(Z, dZ);
            const double step_factor = 0.9 + 0.09 * std::min({1.0, amp, amd});
            const double alpha_p = std::min(1.0, step_factor * amp);
            const double alpha_d = std::min(1.0, step_factor * amd);
            for (size_t k = 0; k < X.size(); ++k) {
                X[k] += alpha_p * dX[k];
                Z[k] += alpha_d * dZ[k];
                X[k] = 0.5 * (X[k] + X[k].transpose());
                Z[k] = 0.5 * (Z[k] + Z[k].transpose());
            }
            y += alpha_d * dy;
            if (std::max(alpha_p, alpha_d) < 1e-10) {
                if (++stalls >= 3) {
                    res.stalled = true;
                    res.w = y;
                    return res;
                }
            } else {
                stalls = 0;
            }
        }
        return res;
    }

private:
    Vector apply(const std::vector<Matrix>& X) const {
        Vector out = Vector::Zero(b_.size());
        for (size_t k = 0; k < A_.size(); ++k) out.noalias() += A_[k].transpose() * vec_of(X[k]);
        return out;
    }

    std::vector<Matrix> adjoint(const Vector& y) const {
        std::vector<Matrix> out;
        out.reserve(A_.size());
        for (size_t k = 0; k < A_.size(); ++k) out.push_back(unvec(A_[k] * y, dims_[k]));
        return out;
    }

    static double inner(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
        double s = 0.0;
        for (size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
        return s;
    }

    // Largest alpha with X + alpha dX still PSD.
    static double max_step(const std::vector<Matrix>& X, const std::vector<Matrix>& dX) {
        double alpha = std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < X.size(); ++k) {
            Eigen::LLT<Matrix> llt(X[k]);
            const Matrix L = llt.matrixL();
            const Matrix Linv = L.triangularView<Eigen::Lower>().solve(Matrix::Identity(L.rows(), L.cols()));
            const double lmin = min_eig(Linv * dX[k] * Linv.transpose());
            if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
        }
        return alpha;
    }

    std::vector<Matrix> C_;
    std::vector<Matrix> A_;
    Vector b_;
    std::vector<Index> dims_;
    Index total_dim_ = 0;
};

void fill_diagnostics(const Problem& problem, const Vector& y, double tol, SolveReport& report) {
    report.min_psd_slack = std::numeric_limits<double>::infinity();
    bool violated = false;
    for (const auto& con : problem.psd_constraints()) {
        const Matrix v = con.expr.evaluate(y);
        const double slack = min_eig(v) - con.margin;
        report.min_psd_slack = std::min(report.min_psd_slack, slack);
        if (slack < -10.0 * tol * (1.0 + v.norm())) violated = true;
    }
    for (const auto& con : problem.socs()) {
        const double t = con.bound.evaluate(y)(0, 0);
        const double nv = con.vector.evaluate(y).norm();
        if (t - nv < -10.0 * tol * (1.0 + std::abs(t) + nv)) violated = true;
    }
    report.equality_residual = 0.0;
    for (const auto& con : problem.equalities()) {
        const Matrix v = con.expr.evaluate(y);
        if (v.size() > 0) report.equality_residual = std::max(report.equality_residual, v.cwiseAbs().maxCoeff());
        if (v.size() > 0 && v.cwiseAbs().maxCoeff() > 1e3 * tol * (1.0 + con.expr.constant_vec().norm()))
            violated = true;
    }
    const Affine& obj = problem.objective();
    report.objective = obj.evaluate(y)(0, 0);
    if (violated && (report.status == Status::Optimal || report.status == Status::Feasible)) {
        report.status = Status::Inaccurate;
        report.diagnostic += "constraint violation above tolerance after mapping back; ";
    }
}

} // namespace

SolveReport solve(const Problem& problem, const SolveOptions& options) {
    SolveReport report;
    try {
        const Index p = problem.scalar_count();
        const double tol = options.tolerance;
        if (p == 0) {
            report.diagnostic = "problem has no decision variables";
            return report;
        }

        // Objective as max c'y.
        Vector c = Vector::Zero(p);
        if (problem.sense() != Sense::Feasibility) {
            const Affine& obj = problem.objective();
            c.head(obj.width()) = obj.linear().row(0).transpose();
            if (problem.sense() == Sense::Minimize) c = -c;
        }

        // Equalities: y = y0 + N z.
        Index eq_rows = 0;
        for (const auto& e : problem.equalities()) eq_rows += e.expr.rows() * e.expr.cols();
        Vector y0 = Vector::Zero(p);
        Matrix N = Matrix::Identity(p, p);
        if (eq_rows > 0) {
            Matrix E(eq_rows, p);
            Vector e0(eq_rows);
            Index r = 0;
            for (const auto& e : problem.equalities()) {
                const Index k = e.expr.rows() * e.expr.cols();
                E.middleRows(r, k) = padded_linear(e.expr, p);
                e0.segment(r, k) = e.expr.constant_vec();
                r += k;
            }
            Eigen::JacobiSVD<Matrix> svd(E, Eigen::ComputeThinU | Eigen::ComputeFullV);
            const Vector& sv = svd.singularValues();
            const double thresh = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
            Index rank = 0;
            while (rank < sv.size() && sv(rank) > thresh) ++rank;
            const Matrix Ur = svd.matrixU().leftCols(rank);
            const Matrix Vr = svd.matrixV().leftCols(rank);
            y0 = -Vr * (sv.head(rank).cwiseInverse().asDiagonal() * (Ur.transpose() * e0));
            if ((E * y0 + e0).norm() > 1e-8 * (1.0 + e0.norm())) {
                report.status = Status::Infeasible;
                report.diagnostic = "linear equalities are inconsistent";
                return report;
            }
            N = svd.matrixV().rightCols(p - rank);
        }
        const Index q = N.cols();

        std::vector<VecBlock> blocks;
        for (const auto& con : problem.psd_constraints()) blocks.push_back(psd_block(con, p));
        for (const auto& con : problem.socs()) blocks.push_back(soc_block(con, p));

        // Block data in z coordinates.
        Index rows = 0;
        for (auto& b : blocks) {
            b.c += b.lin * y0;
            b.lin = b.lin * N;
            rows += b.dim * b.dim;
        }
        const Vector cz = N.transpose() * c;

        if (q == 0 || blocks.empty()) {
            if (q > 0 && cz.norm() > 1e-12) {
                report.status = Status::Failed;
                report.diagnostic = "objective is unbounded: no constraint limits it";
                return report;
            }
            bool ok = true;
            for (const auto& b : blocks)
                if (min_eig(unvec(b.c, b.dim)) < -tol * (1.0 + b.c.norm())) ok = false;
            report.status = ok ? (problem.sense() == Sense::Feasibility ? Status::Feasible : Status::Optimal)
                               : Status::Infeasible;
            report.y = y0;
            if (!ok) {
                report.y.resize(0);
                report.diagnostic = "constraints are violated by the only admissible point";
                return report;
            }
            fill_diagnostics(problem, y0, tol, report);
            return report;
        }

        // Drop directions that no block sees: z = D V_r S_r^{-1} w.
        Matrix G(rows, q);
        {
            Index r = 0;
            for (const auto& b : blocks) {
                G.middleRows(r, b.lin.rows()) = b.lin;
                r += b.lin.rows();
            }
        }
        Vector D(q);
        for (Index j = 0; j < q; ++j) {
            const double nrm = G.col(j).norm();
            D(j) = nrm > 0.0 ? 1.0 / nrm : 1.0;
        }
        const Matrix GD = G * D.asDiagonal();
        Eigen::BDCSVD<Matrix> svd(GD, Eigen::ComputeThinU | Eigen::ComputeFullV);
        const Vector& sv = svd.singularValues();
        const double thresh = 1e-9 * (sv.size() > 0 ? sv(0) : 0.0);
        Index rank = 0;
        while (rank < sv.size() && sv(rank) > thresh) ++rank;
        const Vector Dc = D.asDiagonal() * cz;
        if (rank < q) {
            const Matrix Vn = svd.matrixV().rightCols(q - rank);
            if ((Vn.transpose() * Dc).norm() > 1e-9 * (1.0 + Dc.norm())) {
                report.status = Status::Failed;
                report.diagnostic = "objective is unbounded along a direction no constraint sees";
                return report;
            }
        }
        if (rank == 0) {
            report.status = Status::Failed;
            report.diagnostic = "constraints do not depend on the decision variables";
            return report;
        }
        const Matrix T = D.asDiagonal() * svd.matrixV().leftCols(rank) * sv.head(rank).cwiseInverse().asDiagonal();

        std::vector<Matrix> Cb;
        std::vector<Matrix> Ab;
        for (const auto& b : blocks) {
            Cb.push_back(unvec(b.c, b.dim));
            Ab.push_back(-(b.lin * T));
        }
        const Vector bw = T.transpose() * cz;

        // Rescale so that C and b are of unit size.
        double normC = 0.0;
        for (const auto& m : Cb) normC += m.squaredNorm();
        normC = std::max(1.0, std::sqrt(normC));
        const double normb = std::max(1.0, bw.norm());
        for (auto& m : Cb) m /= normC;

        InteriorPoint ipm(std::move(Cb), std::move(Ab), bw / normb);
        const auto res = ipm.run(tol, options.max_iterations);
        report.iterations = res.iterations;
        report.primal_residual = res.pinf;
        report.dual_residual = res.dinf;
        report.gap = res.gap;

        if (res.infeasible) {
            report.status = Status::Infeasible;
            report.diagnostic = "LMI is infeasible (primal certificate found)";
            return report;
        }
        if (res.unbounded) {
            report.status = Status::Failed;
            report.diagnostic = "objective appears unbounded";
            return report;
        }
        if (res.w.size() != rank || !res.w.allFinite()) {
            report.status = Status::Failed;
            report.diagnostic = "interior-point iteration broke down";
            return report;
        }

        const Vector y = y0 + N * (T * (normC * res.w));
        if (res.converged) {
            report.status = problem.sense() == Sense::Feasibility ? Status::Feasible : Status::Optimal;
        } else {
            const double loose = std::max(1e-5, std::sqrt(tol));
            if (res.dinf < 1e2 * tol && res.pinf < loose && res.gap < loose) {
                report.status = Status::Inaccurate;
                report.diagnostic = res.stalled ? "stalled near the optimum; " : "iteration limit near the optimum; ";
            } else if (res.dinf < 1e2 * tol) {
                // The iterate satisfies the constraints; only optimality is uncertified.
                std::ostringstream os;
                os << "feasible point, optimality not certified (pinf " << res.pinf << ", gap " << res.gap << "); ";
                report.status = Status::Inaccurate;
                report.diagnostic = os.str();
            } else {
                report.status = Status::Failed;
                std::ostringstream os;
                os << (res.stalled ? "stalled" : "iteration limit reached") << " (pinf " << res.pinf << ", dinf "
                   << res.dinf << ", gap " << res.gap << ")";
                report.diagnostic = os.str();
                return report;
            }
        }
        report.y = y;
        fill_diagnostics(problem, y, tol, report);
    } catch (const std::exception& e) {
        report = SolveReport{};
        report.status = Status::Failed;
        report.diagnostic = e.what();
    }
    return report;
}

} // namespace ddc::sdp
