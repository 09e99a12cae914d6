#pragma once

#include <functional>

#include "leech/realization.hpp"

namespace leech {

/// Two-sided realization of a Hermitian-on-the-circle symbol
///   R(z) = z C (I - zA)^{-1} Gamma + R0 + Gamma* (zI - A*)^{-1} C*.
struct SymbolR {
  CMatrix A, C, Gamma, R0;

  Eigen::Index states() const { return A.rows(); }
  Eigen::Index size() const { return R0.rows(); }

  /// Checks dimensions, stability of A and Hermitian R0 (within 1e-12).
  void validate() const;

  /// R(z) for z != 0 (any z where both resolvents exist).
  CMatrix eval(Complex z) const;

  /// Fourier coefficient R_j (j may be negative): R_0, C A^{j-1} Gamma, R_{-j} = R_j*.
  CMatrix coefficient(int j) const;
};

/// Symbol with R0 and Gamma built from the controllability Gramians P1, P2
/// of (A, B1) and (A, B2); R0 is symmetrized.
SymbolR build_symbol(const LeechData& data);

/// Symbol of Omega(z) Omega(1/conj z)* for a stable realization.
SymbolR product_symbol(const Realization& omega);

struct RiccatiOptions {
  double tol = 1e-12;
  int max_iter = 50000;
  /// Called with every iterate Q_k, Q_0 = 0 included.
  std::function<void(const CMatrix&)> observer;
};

/// Residual of Q = A*QA + (C - Gamma*QA)* (R0 - Gamma*Q Gamma)^{-1} (C - Gamma*QA),
/// Frobenius norm.
double riccati_residual(const SymbolR& sym, const CMatrix& Q);

/// A - Gamma (R0 - Gamma*Q Gamma)^{-1} (C - Gamma*QA).
CMatrix closed_loop(const SymbolR& sym, const CMatrix& Q);

/// Stabilizing solution of the Riccati equation by fixed-point iteration
/// from Q = 0. Throws NoStabilizingSolution when R0 - Gamma*Q_k Gamma loses
/// positivity, the iteration does not settle in max_iter steps, or the
/// closed loop is not stable.
CMatrix riccati_stabilizing(const SymbolR& sym, const RiccatiOptions& opts = {});

/// Invertible outer factor Phi with Phi(zeta)* Phi(zeta) = R(zeta).
struct SpectralFactor {
  CMatrix Q;
  CMatrix Phi0;   // (R0 - Gamma*Q Gamma)^{1/2}
  CMatrix CPhi;   // Phi0 (R0 - Gamma*Q Gamma)^{-1} (C - Gamma*QA)
  CMatrix Ax;     // closed-loop state matrix of the inverse
  Realization phi;      // (A, Gamma, CPhi, Phi0)
  Realization phi_inv;  // (Ax, Gamma Phi0^{-1}, -Phi0^{-1} CPhi, Phi0^{-1})
};

/// Builds the outer factor from the stabilizing solution Q. Throws
/// NotStabilizing if Q fails the residual, positivity or stability test at tol.
SpectralFactor outer_factor(const SymbolR& sym, const CMatrix& Q,
                            double tol = 1e-9);

}  // namespace leech
