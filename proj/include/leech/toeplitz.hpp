#pragma once

// Finite-section oracles for the operator identities behind the solver:
// block Toeplitz and Hankel truncations, Pick-kernel matrices and the
// Toeplitz-inverse formula for the stabilizing Riccati solution.

#include <cstdint>
#include <optional>
#include <span>

#include "leech/realization.hpp"
#include "leech/spectral.hpp"

namespace leech {

struct BlockSection {
  int N = 0;
  Eigen::Index block_rows = 0;
  Eigen::Index block_cols = 0;
  CMatrix M;
};

/// Smallest N with rho(A)^N < 1e-10, clamped to [1, 400].
int default_truncation(const CMatrix& A);

/// Markov parameters D, CB, CAB, ..., i.e. Omega_0 .. Omega_{count-1}.
std::vector<CMatrix> markov_parameters(const Realization& omega, int count);

/// [C; CA; ...; CA^{N-1}].
CMatrix observability_section(const CMatrix& A, const CMatrix& C, int N);

/// [B, AB, ..., A^{N-1}B].
CMatrix controllability_section(const CMatrix& A, const CMatrix& B, int N);

/// N x N block lower-triangular section of T_Omega.
BlockSection toeplitz_section(const Realization& omega, int N,
                              Exec exec = Exec::Parallel);

/// N x N Hermitian block section of T_R.
BlockSection toeplitz_section(const SymbolR& sym, int N,
                              Exec exec = Exec::Parallel);

/// N x N block Hankel section with (i, j) block C A^{i+j} B.
BlockSection hankel_section(const Realization& omega, int N,
                            Exec exec = Exec::Parallel);

/// Block matrix [(G(z_k)G(z_j)* - K(z_k)K(z_j)* - F(z_k)F(z_j)*) / (1 - conj(z_j) z_k)],
/// symmetrized. Throws PointOnBoundary if some |z| >= 1 - 1e-12.
CMatrix pick_kernel_matrix(const LeechData& data, std::span<const Complex> points,
                           const Realization* F = nullptr,
                           Exec exec = Exec::Parallel);

/// W_N* T_{R,N}^{-1} W_N. Throws SectionNotPositive if the section is not
/// positive definite.
CMatrix q_toeplitz_oracle(const SymbolR& sym, int N);

struct PositivityReport {
  double min_eig = 0.0;           // smallest eigenvalue of the section
  double route_discrepancy = 0.0; // || product route - Toeplitz/Hankel route ||_F
  CMatrix section;                // the product-route section
};

/// Section of T_G T_G* - T_K T_K* (- T_F T_F*) assembled two ways: from the
/// products of the lower-triangular sections, and as T_{GG*} - H_G H_G* etc.
PositivityReport positivity_section_report(const LeechData& data, int N,
                                           const Realization* F = nullptr);

/// Minimum eigenvalue of the section above.
double positivity_section_check(const LeechData& data, int N,
                                const Realization* F = nullptr);

/// Max over `samples` random pairs (z, lambda) with |z|, |lambda| <= 0.9 of
/// || lambda conj(z) L(lambda)L(z)* + G(lambda)G(z)* - L(lambda)L(z)*
///    - K(lambda)K(z)* - F(lambda)F(z)* ||_2, with L(z) = C (I - zA)^{-1} Upsilon.
double fundamental_identity_residual(const LeechData& data, const Realization& F,
                                     const CMatrix& Upsilon, int samples,
                                     std::uint64_t seed = 20140101);

}  // namespace leech
