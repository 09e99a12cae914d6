#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leech/realization.hpp"
#include "leech/spectral.hpp"

namespace leech {

/// Theta(z) = D + z CPhi (I - zA)^{-1} B, a two-sided inner function.
struct ThetaFactor {
  CMatrix B;  // n x r
  CMatrix D;  // r x r
  Eigen::Index r() const { return D.cols(); }
};

/// Columns of [B; D] span the null space of [A*Q  CPhi*], orthonormal in the
/// diag(Q, I) inner product. Null vectors come from the SVD in index order and
/// are orthonormalized by weighted Gram-Schmidt, and each column is rotated
/// so its first entry above 1e-6 of the column maximum is real positive. Throws DegenerateKernel when
/// the null space does not have dimension CPhi.rows() or Q is not positive
/// definite on it.
ThetaFactor inner_theta(const CMatrix& A, const CMatrix& CPhi, const CMatrix& Q,
                        double tol = 1e-9);

/// F(z) = D3 + z C (I - zA)^{-1} B3 with B3 = B_Theta and
/// D3 = Phi(0)* D_Theta + Gamma* Q B_Theta.
Realization build_F(const SpectralFactor& sf, const ThetaFactor& theta,
                    const LeechData& data);

struct SolvabilityVerdict {
  bool solvable = true;
  double margin = 0.0;  // min eigenvalue of P3 + P2 - P1 (+inf when n = 0)
};

SolvabilityVerdict solvability_check(const CMatrix& P1, const CMatrix& P2,
                                     const CMatrix& P3, double tol);

/// (D_M* D_M + B_M* Y B_M)^+ (D_M* D_N + B_M* Y B_N). The pseudoinverse drops
/// singular values at or below rtol * sigma_max (rtol = 0: pinv default).
CMatrix partial_isometry(const CMatrix& DM, const CMatrix& BM, const CMatrix& DN,
                         const CMatrix& BN, const CMatrix& Y, double rtol = 0.0);

enum class Branch { StrictlyPositive, RIdenticallyZero };

std::string_view to_string(Branch branch);

struct Diagnostics {
  std::optional<Branch> branch;
  double solvability_margin = 0.0;
  double leech_residual = 0.0;         // max_zeta ||G X - K||
  double psi_residual = 0.0;           // max_zeta ||G Psi - F||
  double contraction_margin = 0.0;     // 1 - hinf_norm_grid([X Psi])
  double riccati_residual = 0.0;
  double partial_isometry_residual = 0.0;  // ||U U* U - U||_F
  double symbol_min_eig = 0.0;         // min over the grid of R(zeta), on Riccati failure
  MinimalityReport minimality;
  std::vector<std::string> warnings;
};

struct LeechSolution {
  Realization X;    // p x q
  Realization Psi;  // p x r
  Realization F;    // m x r
  CMatrix U;        // (n + p) x (n + q + r)
  CMatrix Upsilon, Q, Y, P1, P2, P3;
  ThetaFactor theta;
  Branch branch = Branch::StrictlyPositive;
  Diagnostics diagnostics;
};

struct SolveOptions {
  double tol = 1e-9;            // solvability margin and PSD clamping
  int grid = 4096;              // circle points for every grid check
  int max_iter = 50000;         // Riccati iterations
  double riccati_tol = 1e-12;
  double zero_tol = 1e-10;      // relative R == 0 detection
  double rank_rtol = 1e-11;     // pinv cutoff relative to sigma_max in U
  bool allow_nonminimal = true;
  Exec exec = Exec::Parallel;
};

/// Failure of solve carrying whatever diagnostics were computed before it.
class SolveError : public Error {
 public:
  SolveError(ErrorCode code, const std::string& message, Diagnostics diagnostics)
      : Error(code, message), diagnostics_(std::move(diagnostics)) {}

  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

/// Full pipeline: symbol, branch selection, outer factor and inner function,
/// F, solvability, partial isometry, X and Psi. Throws SolveError with code
/// NotSolvable or SemidefiniteUnsupported, or an Error from the numerics.
LeechSolution solve(const LeechData& data, const SolveOptions& opts = {});

/// Steps after F is known: Upsilon, Y, U, its partition into X and Psi, and
/// the diagnostics. F must share (A, C) with data; P3 is its Gramian.
LeechSolution assemble_solution(const LeechData& data, const Realization& F,
                                const CMatrix& P3, Branch branch,
                                const SolveOptions& opts = {});

/// max over the grid of ||G(zeta) X(zeta) - K(zeta)||.
double leech_residual(const LeechData& data, const Realization& X, int grid,
                      Exec exec = Exec::Parallel);

}  // namespace leech
