#pragma once

// Seeded random problem generators and small helpers shared by the tests,
// the acceptance suite and the benchmark.

#include <cstdint>
#include <random>

#include "leech/realization.hpp"

namespace leech::testing {

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols);

/// Random Haar-like unitary (QR of a Gaussian matrix with phase fix).
CMatrix random_unitary(Rng& rng, Eigen::Index size);

/// Random square matrix scaled to spectral radius `radius`.
CMatrix random_stable(Rng& rng, Eigen::Index n, double radius);

/// Random stable realization with the given dimensions and spectral radius.
Realization random_realization(Rng& rng, Eigen::Index n, Eigen::Index outputs,
                               Eigen::Index inputs, double radius);

/// Uniform point in the disc |z| <= radius.
Complex random_disc_point(Rng& rng, double radius = 0.9);

struct SolvableInstance {
  LeechData data;
  Realization G;
  Realization X0;  // ||X0||_inf <= norm_bound on the grid; K = G X0
};

/// K = G X0 with D1 of full row rank (p > m) and ||X0|| scaled to norm_bound.
/// The joint realization of [G K] has state dimension nG + nX.
SolvableInstance random_solvable(Rng& rng, Eigen::Index nG, Eigen::Index nX,
                                 Eigen::Index m, Eigen::Index p, Eigen::Index q,
                                 double norm_bound = 0.9, double radius = 0.7);

/// The i-th instance of the fixed acceptance family: n <= 6, m <= 3.
SolvableInstance acceptance_instance(int index, std::uint64_t seed = 7001);

/// The example problem: G = [1 1]/sqrt 2, K = z/2.
LeechData example_data();

/// G = [1 1]/sqrt 2, K = z: R vanishes identically.
LeechData r_zero_data();

}  // namespace leech::testing
