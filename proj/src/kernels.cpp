#include "leech/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace leech::kernels {

Complex circle_point(int k, int points) {
  const double t = 2.0 * std::numbers::pi * static_cast<double>(k) /
                   static_cast<double>(points);
  return {std::cos(t), std::sin(t)};
}

double circle_max(int points, const std::function<double(Complex)>& f,
                  Exec exec) {
  double best = -std::numeric_limits<double>::infinity();
  if (exec == Exec::Serial) {
    for (int k = 0; k < points; ++k) {
      best = std::max(best, f(circle_point(k, points)));
    }
    return best;
  }
  // Exceptions may not escape an OpenMP region; capture the first one.
  std::exception_ptr failure;
#pragma omp parallel for reduction(max : best) schedule(static)
  for (int k = 0; k < points; ++k) {
    try {
      best = std::max(best, f(circle_point(k, points)));
    } catch (...) {
#pragma omp critical(leech_circle_max)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return best;
}

double circle_min(int points, const std::function<double(Complex)>& f,
                  Exec exec) {
  return -circle_max(points, [&f](Complex z) { return -f(z); }, exec);
}

CMatrix assemble_blocks(int block_rows, int block_cols, Eigen::Index rows,
                        Eigen::Index cols,
                        const std::function<CMatrix(int, int)>& block,
                        Exec exec) {
  CMatrix M(block_rows * rows, block_cols * cols);
  const int total = block_rows * block_cols;
  if (exec == Exec::Serial) {
    for (int idx = 0; idx < total; ++idx) {
      const int i = idx / block_cols;
      const int j = idx % block_cols;
      M.block(i * rows, j * cols, rows, cols) = block(i, j);
    }
    return M;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 4)
  for (int idx = 0; idx < total; ++idx) {
    const int i = idx / block_cols;
    const int j = idx % block_cols;
    try {
      M.block(i * rows, j * cols, rows, cols) = block(i, j);
    } catch (...) {
#pragma omp critical(leech_assemble)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return M;
}

CMatrix assemble_blocks(int N, Eigen::Index rows, Eigen::Index cols,
                        const std::function<CMatrix(int, int)>& block,
                        Exec exec) {
  return assemble_blocks(N, N, rows, cols, block, exec);
}

CMatrix block_toeplitz(const std::vector<CMatrix>& lower,
                       const std::vector<CMatrix>& upper, int N, Exec exec) {
  const Eigen::Index rows = lower.front().rows();
  const Eigen::Index cols = lower.front().cols();
  return assemble_blocks(
      N, rows, cols,
      [&](int i, int j) -> CMatrix {
        return i >= j ? lower[i - j] : upper[j - i];
      },
      exec);
}

CMatrix block_hankel(const std::vector<CMatrix>& coeffs, int N, Exec exec) {
  const Eigen::Index rows = coeffs.front().rows();
  const Eigen::Index cols = coeffs.front().cols();
  return assemble_blocks(
      N, rows, cols, [&](int i, int j) -> CMatrix { return coeffs[i + j]; },
      exec);
}

}  // namespace leech::kernels
