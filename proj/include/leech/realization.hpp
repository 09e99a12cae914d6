#pragma once

#include "leech/kernels.hpp"
#include "leech/matrix.hpp"

namespace leech {

/// Omega(z) = D + z C (I - z A)^{-1} B with A n x n, B n x p, C m x n, D m x p.
/// n = 0 is allowed and represents the constant function D.
struct Realization {
  CMatrix A, B, C, D;

  Eigen::Index states() const { return A.rows(); }
  Eigen::Index outputs() const { return D.rows(); }
  Eigen::Index inputs() const { return D.cols(); }

  /// Dimension and finiteness check; throws DimensionMismatch / NonFinite.
  void validate() const;

  /// spectral_radius(A) < 1 - kStabilityMargin.
  bool is_stable() const;
};

/// Joint realization [G K](z) = [D1 D2] + z C (I - z A)^{-1} [B1 B2]
/// with G m x p and K m x q sharing the state matrix A.
struct LeechData {
  CMatrix A, B1, B2, C, D1, D2;

  Eigen::Index n() const { return A.rows(); }
  Eigen::Index m() const { return D1.rows(); }
  Eigen::Index p() const { return D1.cols(); }
  Eigen::Index q() const { return D2.cols(); }

  /// Dimensions, finiteness and stability of A; throws on violation.
  void validate() const;

  Realization G() const { return {A, B1, C, D1}; }
  Realization K() const { return {A, B2, C, D2}; }
};

/// D + z C (I - z A)^{-1} B. Throws SingularResolvent if I - zA is
/// numerically singular.
CMatrix eval(const Realization& R, Complex z);

/// Unique solution of P = A P A* + W for stable A (complex Schur method).
CMatrix solve_stein(const CMatrix& A, const CMatrix& W);

/// Controllability Gramian: P = A P A* + B B*. Throws UnstableA.
CMatrix ctrl_gramian(const CMatrix& A, const CMatrix& B);

/// Observability Gramian: Y = A* Y A + C* C. Throws UnstableA.
CMatrix obs_gramian(const CMatrix& A, const CMatrix& C);

struct MinimalityReport {
  bool observable = true;
  bool controllable = true;
  Eigen::Index obs_rank = 0;
  Eigen::Index ctrl_rank = 0;

  bool minimal() const { return observable && controllable; }
};

/// Gramian-rank test: eigenvalues below tol * lambda_max count as zero.
MinimalityReport minimality_report(const LeechData& data, double tol = 1e-10);

/// Largest singular value of R on the circle grid exp(2 pi i k / grid_points).
/// A lower bound for the H-infinity norm.
double hinf_norm_grid(const Realization& R, int grid_points = 4096,
                      Exec exec = Exec::Parallel);

/// Realization of the product Omega1(z) Omega2(z) on the stacked state.
Realization product(const Realization& left, const Realization& right);

/// Realization of [Omega1 Omega2] when both share (A, C).
Realization hstack_shared(const Realization& left, const Realization& right);

}  // namespace leech
