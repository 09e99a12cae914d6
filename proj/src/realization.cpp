#include "leech/realization.hpp"

#include <algorithm>
#include <string>

namespace leech {

namespace {

void check_stable(const CMatrix& A, std::string_view what) {
  const double rho = spectral_radius(A);
  if (!(rho < 1.0 - kStabilityMargin)) {
    throw Error(ErrorCode::UnstableA, std::string(what) +
                                          " has spectral radius " +
                                          std::to_string(rho));
  }
}

}  // namespace

void Realization::validate() const {
  const auto n = A.rows();
  require_shape(A, n, n, "A");
  require_shape(B, n, D.cols(), "B");
  require_shape(C, D.rows(), n, "C");
  for (const auto* M : {&A, &B, &C, &D}) require_finite(*M, "realization");
}

bool Realization::is_stable() const {
  return spectral_radius(A) < 1.0 - kStabilityMargin;
}

void LeechData::validate() const {
  const auto n = A.rows();
  require_shape(A, n, n, "A");
  require_shape(C, D1.rows(), n, "C");
  require_shape(B1, n, D1.cols(), "B1");
  require_shape(B2, n, D2.cols(), "B2");
  require_shape(D2, D1.rows(), D2.cols(), "D2");
  require_finite(A, "A");
  require_finite(B1, "B1");
  require_finite(B2, "B2");
  require_finite(C, "C");
  require_finite(D1, "D1");
  require_finite(D2, "D2");
  check_stable(A, "A");
}

CMatrix eval(const Realization& R, Complex z) {
  const auto n = R.states();
  if (n == 0 || z == Complex(0.0)) return R.D;
  const CMatrix resolvent = CMatrix::Identity(n, n) - z * R.A;
  Eigen::PartialPivLU<CMatrix> lu(resolvent);
  if (!(lu.rcond() > 1e-14)) {
    throw Error(ErrorCode::SingularResolvent,
                "I - zA is singular at z = (" + std::to_string(z.real()) +
                    ", " + std::to_string(z.imag()) + ")");
  }
  return R.D + z * (R.C * lu.solve(R.B));
}

CMatrix solve_stein(const CMatrix& A, const CMatrix& W) {
  const auto n = A.rows();
  if (n == 0) return CMatrix(0, 0);
  check_stable(A, "Stein equation state matrix");

  // A = U T U*, T upper triangular. With Pt = U* P U and Wt = U* W U the
  // equation becomes Pt = T Pt T* + Wt, solved column by column from the
  // last: (I - conj(T_jj) T) p_j = w_j + T sum_{l>j} conj(T_jl) p_l.
  Eigen::ComplexSchur<CMatrix> schur(A);
  const CMatrix& U = schur.matrixU();
  const CMatrix& T = schur.matrixT();
  const CMatrix Wt = U.adjoint() * W * U;
  CMatrix Pt = CMatrix::Zero(n, n);
  const CMatrix I = CMatrix::Identity(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    CVector acc = CVector::Zero(n);
    for (Eigen::Index l = j + 1; l < n; ++l) {
      acc += std::conj(T(j, l)) * Pt.col(l);
    }
    const CVector rhs = Wt.col(j) + T * acc;
    const CMatrix lhs = I - std::conj(T(j, j)) * T;
    Pt.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
  }
  CMatrix P = U * Pt * U.adjoint();
  // One refinement sweep on the residual.
  const CMatrix residual = W + A * P * A.adjoint() - P;
  const CMatrix Rt = U.adjoint() * residual * U;
  CMatrix Dt = CMatrix::Zero(n, n);
  for (Eigen::Index j = n - 1; j >= 0; --j) {
    CVector acc = CVector::Zero(n);
    for (Eigen::Index l = j + 1; l < n; ++l) {
      acc += std::conj(T(j, l)) * Dt.col(l);
    }
    const CVector rhs = Rt.col(j) + T * acc;
    const CMatrix lhs = I - std::conj(T(j, j)) * T;
    Dt.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
  }
  P += U * Dt * U.adjoint();
  return P;
}

CMatrix ctrl_gramian(const CMatrix& A, const CMatrix& B) {
  require_shape(B, A.rows(), B.cols(), "B");
  return hermitian_part(solve_stein(A, B * B.adjoint()));
}

CMatrix obs_gramian(const CMatrix& A, const CMatrix& C) {
  require_shape(C, C.rows(), A.rows(), "C");
  return hermitian_part(solve_stein(A.adjoint(), C.adjoint() * C));
}

namespace {

Eigen::Index gramian_rank(const CMatrix& P, double tol) {
  if (P.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(P),
                                             Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.maxCoeff();
  if (!(top > 0.0)) return 0;
  return (lambda.array() > tol * top).count();
}

}  // namespace

MinimalityReport minimality_report(const LeechData& data, double tol) {
  const auto n = data.n();
  MinimalityReport report;
  if (n == 0) return report;
  const CMatrix B = hcat({data.B1, data.B2});
  report.obs_rank = gramian_rank(obs_gramian(data.A, data.C), tol);
  report.ctrl_rank = gramian_rank(ctrl_gramian(data.A, B), tol);
  report.observable = report.obs_rank == n;
  report.controllable = report.ctrl_rank == n;
  return report;
}

double hinf_norm_grid(const Realization& R, int grid_points, Exec exec) {
  if (grid_points < 16) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least 16 points");
  }
  if (R.outputs() == 0 || R.inputs() == 0) return 0.0;
  return kernels::circle_max(
      grid_points, [&R](Complex z) { return spectral_norm(eval(R, z)); },
      exec);
}

Realization product(const Realization& left, const Realization& right) {
  // x1' = A1 x1 + B1 C2 x2 + B1 D2 u, x2' = A2 x2 + B2 u.
  const auto n1 = left.states();
  const auto n2 = right.states();
  Realization out;
  out.A = CMatrix::Zero(n1 + n2, n1 + n2);
  out.A.topLeftCorner(n1, n1) = left.A;
  out.A.block(0, n1, n1, n2) = left.B * right.C;
  out.A.bottomRightCorner(n2, n2) = right.A;
  out.B = vcat({left.B * right.D, right.B});
  out.C = hcat({left.C, left.D * right.C});
  out.D = left.D * right.D;
  return out;
}

Realization hstack_shared(const Realization& left, const Realization& right) {
  Realization out;
  out.A = left.A;
  out.C = left.C;
  out.B = hcat({left.B, right.B});
  out.D = hcat({left.D, right.D});
  return out;
}

}  // namespace leech
