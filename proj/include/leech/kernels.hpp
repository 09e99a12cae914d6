#pragma once

// Data-parallel inner loops. Each kernel has a serial reference path and an
// OpenMP path selected by Exec; both produce identical results (reductions
// are maxima, assembly writes disjoint blocks).

#include <functional>
#include <span>
#include <vector>

#include "leech/matrix.hpp"

namespace leech {

enum class Exec { Serial, Parallel };

namespace kernels {

/// The k-th of `points` equispaced points exp(2 pi i k / points) on the circle.
Complex circle_point(int k, int points);

/// max over the circle grid of f(zeta). f must be safe to call concurrently.
double circle_max(int points, const std::function<double(Complex)>& f,
                  Exec exec = Exec::Parallel);

/// Minimum over the circle grid of f(zeta).
double circle_min(int points, const std::function<double(Complex)>& f,
                  Exec exec = Exec::Parallel);

/// Block matrix with N x N blocks of size rows x cols whose (i, j) block is
/// block(i, j). Blocks are produced concurrently in the parallel path.
CMatrix assemble_blocks(int N, Eigen::Index rows, Eigen::Index cols,
                        const std::function<CMatrix(int, int)>& block,
                        Exec exec = Exec::Parallel);

/// Same as assemble_blocks for a non-square block grid.
CMatrix assemble_blocks(int block_rows, int block_cols, Eigen::Index rows,
                        Eigen::Index cols,
                        const std::function<CMatrix(int, int)>& block,
                        Exec exec = Exec::Parallel);

/// Block Toeplitz matrix: (i, j) block is lower[i - j] for i >= j and
/// upper[j - i] for i < j. lower[0] is the diagonal; upper[0] is ignored.
CMatrix block_toeplitz(const std::vector<CMatrix>& lower,
                       const std::vector<CMatrix>& upper, int N,
                       Exec exec = Exec::Parallel);

/// Block Hankel matrix with (i, j) block coeffs[i + j].
CMatrix block_hankel(const std::vector<CMatrix>& coeffs, int N,
                     Exec exec = Exec::Parallel);

}  // namespace kernels
}  // namespace leech
