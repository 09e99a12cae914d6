#pragma once

#include <complex>
#include <initializer_list>
#include <string_view>

#include <Eigen/Dense>

#include "leech/error.hpp"

namespace leech {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A state matrix counts as stable when its spectral radius is below 1 - kStabilityMargin.
inline constexpr double kStabilityMargin = 1e-9;

bool all_finite(const CMatrix& M);

/// Throws NonFinite naming `what` if any entry is NaN or infinite.
void require_finite(const CMatrix& M, std::string_view what);

/// Throws DimensionMismatch unless M is rows x cols.
void require_shape(const CMatrix& M, Eigen::Index rows, Eigen::Index cols,
                   std::string_view what);

/// (M + M*) / 2.
CMatrix hermitian_part(const CMatrix& M);

/// Moore-Penrose pseudoinverse.
///
/// Singular values at or below the cutoff are treated as exactly zero. With
/// tol == 0 the cutoff is sigma_max * max(rows, cols) * machine epsilon;
/// otherwise tol is the absolute cutoff.
CMatrix pinv(const CMatrix& M, double tol = 0.0);

/// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero.
/// Throws NotHermitian if ||M - M*||_F > tol (1 + ||M||_F) and NotPSD if an
/// eigenvalue lies below -tol.
CMatrix psd_sqrt(const CMatrix& M, double tol = 1e-10);

/// Smallest eigenvalue of the Hermitian part of M; +infinity for an empty matrix.
double min_hermitian_eig(const CMatrix& M);

/// Largest modulus of an eigenvalue of A; 0 for an empty matrix.
double spectral_radius(const CMatrix& A);

/// Number of singular values above rel_tol * sigma_max (and above zero).
Eigen::Index numerical_rank(const CMatrix& M, double rel_tol);

/// Horizontal / vertical concatenation; parts may have zero columns / rows.
CMatrix hcat(std::initializer_list<CMatrix> parts);
CMatrix vcat(std::initializer_list<CMatrix> parts);

/// Largest singular value (0 for an empty matrix).
double spectral_norm(const CMatrix& M);

}  // namespace leech
