#include "leech/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace leech {

bool all_finite(const CMatrix& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void require_finite(const CMatrix& M, std::string_view what) {
  if (!all_finite(M)) {
    throw Error(ErrorCode::NonFinite,
                std::string(what) + " has a NaN or infinite entry");
  }
}

void require_shape(const CMatrix& M, Eigen::Index rows, Eigen::Index cols,
                   std::string_view what) {
  if (M.rows() != rows || M.cols() != cols) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " is " + std::to_string(M.rows()) + "x" +
                    std::to_string(M.cols()) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

CMatrix hermitian_part(const CMatrix& M) {
  return (M + M.adjoint()) / 2.0;
}

CMatrix pinv(const CMatrix& M, double tol) {
  if (tol < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "pinv tolerance must be nonnegative");
  }
  CMatrix result = CMatrix::Zero(M.cols(), M.rows());
  if (M.size() == 0) return result;

  Eigen::JacobiSVD<CMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  double cutoff = tol;
  if (tol == 0.0) {
    cutoff = sigma(0) * static_cast<double>(std::max(M.rows(), M.cols())) *
             std::numeric_limits<double>::epsilon();
  }
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) {
      result += svd.matrixV().col(k) * (1.0 / sigma(k)) *
                svd.matrixU().col(k).adjoint();
    }
  }
  return result;
}

CMatrix psd_sqrt(const CMatrix& M, double tol) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "psd_sqrt needs a square matrix");
  }
  if (M.size() == 0) return M;
  const double asym = (M - M.adjoint()).norm();
  if (asym > tol * (1.0 + M.norm())) {
    throw Error(ErrorCode::NotHermitian,
                "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(M));
  Eigen::VectorXd lambda = eig.eigenvalues();
  if (lambda(0) < -tol) {
    throw Error(ErrorCode::NotPSD,
                "eigenvalue " + std::to_string(lambda(0)) + " below -tol");
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  const CMatrix& V = eig.eigenvectors();
  return hermitian_part(V * lambda.cast<Complex>().asDiagonal() * V.adjoint());
}

double min_hermitian_eig(const CMatrix& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "min_hermitian_eig needs a square matrix");
  }
  if (M.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitian_part(M),
                                             Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

double spectral_radius(const CMatrix& A) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "spectral_radius needs a square matrix");
  }
  if (A.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> eig(A, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

Eigen::Index numerical_rank(const CMatrix& M, double rel_tol) {
  if (M.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& sigma = svd.singularValues();
  const double cutoff = rel_tol * sigma(0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff && sigma(k) > 0.0) ++rank;
  }
  return rank;
}

CMatrix hcat(std::initializer_list<CMatrix> parts) {
  Eigen::Index rows = parts.size() == 0 ? 0 : parts.begin()->rows();
  Eigen::Index cols = 0;
  for (const auto& part : parts) {
    if (part.rows() != rows) {
      throw Error(ErrorCode::DimensionMismatch, "hcat row counts differ");
    }
    cols += part.cols();
  }
  CMatrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const auto& part : parts) {
    out.middleCols(offset, part.cols()) = part;
    offset += part.cols();
  }
  return out;
}

CMatrix vcat(std::initializer_list<CMatrix> parts) {
  Eigen::Index cols = parts.size() == 0 ? 0 : parts.begin()->cols();
  Eigen::Index rows = 0;
  for (const auto& part : parts) {
    if (part.cols() != cols) {
      throw Error(ErrorCode::DimensionMismatch, "vcat column counts differ");
    }
    rows += part.rows();
  }
  CMatrix out(rows, cols);
  Eigen::Index offset = 0;
  for (const auto& part : parts) {
    out.middleRows(offset, part.rows()) = part;
    offset += part.rows();
  }
  return out;
}

double spectral_norm(const CMatrix& M) {
  if (M.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(M);
  return svd.singularValues()(0);
}

}  // namespace leech
