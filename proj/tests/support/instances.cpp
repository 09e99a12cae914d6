#include "support/instances.hpp"

#include <cmath>
#include <numbers>

namespace leech::testing {

CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      M(i, j) = Complex(normal(rng), normal(rng));
    }
  }
  return M;
}

CMatrix random_unitary(Rng& rng, Eigen::Index size) {
  const CMatrix G = random_matrix(rng, size, size);
  Eigen::HouseholderQR<CMatrix> qr(G);
  CMatrix Q = qr.householderQ();
  const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < size; ++k) {
    const Complex d = R(k, k);
    if (std::abs(d) > 0.0) Q.col(k) *= d / std::abs(d);
  }
  return Q;
}

CMatrix random_stable(Rng& rng, Eigen::Index n, double radius) {
  if (n == 0) return CMatrix(0, 0);
  CMatrix A = random_matrix(rng, n, n);
  const double rho = spectral_radius(A);
  return A * (radius / rho);
}

Realization random_realization(Rng& rng, Eigen::Index n, Eigen::Index outputs,
                               Eigen::Index inputs, double radius) {
  Realization R;
  R.A = random_stable(rng, n, radius);
  R.B = random_matrix(rng, n, inputs);
  R.C = random_matrix(rng, outputs, n);
  R.D = random_matrix(rng, outputs, inputs);
  return R;
}

Complex random_disc_point(Rng& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  return std::polar(r, 2.0 * std::numbers::pi * unit(rng));
}

SolvableInstance random_solvable(Rng& rng, Eigen::Index nG, Eigen::Index nX,
                                 Eigen::Index m, Eigen::Index p, Eigen::Index q,
                                 double norm_bound, double radius) {
  SolvableInstance inst;
  inst.G = random_realization(rng, nG, m, p, radius);
  inst.X0 = random_realization(rng, nX, p, q, radius);
  const double x_norm = hinf_norm_grid(inst.X0, 4096, Exec::Serial);
  inst.X0.B *= norm_bound / x_norm;
  inst.X0.D *= norm_bound / x_norm;

  // State (xG, xX): K = G X0 shares A and C with G.
  const Realization K = product(inst.G, inst.X0);
  LeechData& d = inst.data;
  d.A = K.A;
  d.C = K.C;
  d.B1 = vcat({inst.G.B, CMatrix::Zero(nX, p)});
  d.D1 = inst.G.D;
  d.B2 = K.B;
  d.D2 = K.D;
  return inst;
}

SolvableInstance acceptance_instance(int index, std::uint64_t seed) {
  Rng rng(seed + 7919 * static_cast<std::uint64_t>(index));
  std::uniform_int_distribution<int> states(1, 3);
  std::uniform_int_distribution<int> outs(1, 3);
  std::uniform_int_distribution<int> extra(1, 2);
  std::uniform_int_distribution<int> ins(1, 2);
  const int nG = states(rng);
  const int nX = states(rng);
  const int m = outs(rng);
  const int p = m + extra(rng);
  const int q = ins(rng);
  return random_solvable(rng, nG, nX, m, p, q, 0.9, 0.7);
}

LeechData example_data() {
  const double s = 1.0 / std::sqrt(2.0);
  LeechData d;
  d.A = CMatrix::Zero(1, 1);
  d.C = CMatrix::Ones(1, 1);
  d.B1 = CMatrix::Zero(1, 2);
  d.D1 = CMatrix::Constant(1, 2, Complex(s, 0.0));
  d.B2 = CMatrix::Constant(1, 1, Complex(0.5, 0.0));
  d.D2 = CMatrix::Zero(1, 1);
  return d;
}

LeechData r_zero_data() {
  LeechData d = example_data();
  d.B2 = CMatrix::Ones(1, 1);
  return d;
}

}  // namespace leech::testing
