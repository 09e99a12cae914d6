#include "leech/spectral.hpp"

#include <cmath>
#include <string>

namespace leech {

void SymbolR::validate() const {
  const auto n = A.rows();
  const auto m = R0.rows();
  require_shape(A, n, n, "symbol A");
  require_shape(C, m, n, "symbol C");
  require_shape(Gamma, n, m, "symbol Gamma");
  require_shape(R0, m, m, "symbol R0");
  for (const auto* M : {&A, &C, &Gamma, &R0}) require_finite(*M, "symbol");
  if ((R0 - R0.adjoint()).norm() > 1e-12 * (1.0 + R0.norm())) {
    throw Error(ErrorCode::NotHermitian, "symbol R0 is not Hermitian");
  }
  if (!(spectral_radius(A) < 1.0 - kStabilityMargin)) {
    throw Error(ErrorCode::UnstableA, "symbol state matrix is not stable");
  }
}

CMatrix SymbolR::eval(Complex z) const {
  const auto n = states();
  if (n == 0) return R0;
  const CMatrix I = CMatrix::Identity(n, n);
  const CMatrix analytic = z * C * (I - z * A).partialPivLu().solve(Gamma);
  const CMatrix coanalytic =
      Gamma.adjoint() * (z * I - A.adjoint()).partialPivLu().solve(C.adjoint());
  return analytic + R0 + coanalytic;
}

CMatrix SymbolR::coefficient(int j) const {
  if (j == 0) return R0;
  const int k = std::abs(j);
  CMatrix power = CMatrix::Identity(states(), states());
  for (int i = 1; i < k; ++i) power = A * power;
  CMatrix Rk = C * power * Gamma;
  return j > 0 ? Rk : CMatrix(Rk.adjoint());
}

SymbolR build_symbol(const LeechData& data) {
  data.validate();
  const CMatrix P1 = ctrl_gramian(data.A, data.B1);
  const CMatrix P2 = ctrl_gramian(data.A, data.B2);
  const CMatrix dP = P1 - P2;
  SymbolR sym;
  sym.A = data.A;
  sym.C = data.C;
  sym.R0 = hermitian_part(data.D1 * data.D1.adjoint() -
                          data.D2 * data.D2.adjoint() +
                          data.C * dP * data.C.adjoint());
  sym.Gamma = data.B1 * data.D1.adjoint() - data.B2 * data.D2.adjoint() +
              data.A * dP * data.C.adjoint();
  return sym;
}

SymbolR product_symbol(const Realization& omega) {
  const CMatrix P = ctrl_gramian(omega.A, omega.B);
  SymbolR sym;
  sym.A = omega.A;
  sym.C = omega.C;
  sym.R0 = hermitian_part(omega.D * omega.D.adjoint() +
                          omega.C * P * omega.C.adjoint());
  sym.Gamma = omega.B * omega.D.adjoint() + omega.A * P * omega.C.adjoint();
  return sym;
}

namespace {

struct RiccatiTerms {
  CMatrix gain_base;  // C - Gamma* Q A
  CMatrix schur;      // R0 - Gamma* Q Gamma
};

RiccatiTerms riccati_terms(const SymbolR& sym, const CMatrix& Q) {
  return {sym.C - sym.Gamma.adjoint() * Q * sym.A,
          hermitian_part(sym.R0 - sym.Gamma.adjoint() * Q * sym.Gamma)};
}

CMatrix riccati_map(const SymbolR& sym, const CMatrix& Q,
                    const RiccatiTerms& t) {
  return hermitian_part(sym.A.adjoint() * Q * sym.A +
                        t.gain_base.adjoint() * t.schur.ldlt().solve(t.gain_base));
}

}  // namespace

double riccati_residual(const SymbolR& sym, const CMatrix& Q) {
  if (Q.size() == 0) return 0.0;
  const auto t = riccati_terms(sym, Q);
  return (Q - riccati_map(sym, Q, t)).norm();
}

CMatrix closed_loop(const SymbolR& sym, const CMatrix& Q) {
  if (sym.states() == 0) return CMatrix(0, 0);
  const auto t = riccati_terms(sym, Q);
  return sym.A - sym.Gamma * t.schur.ldlt().solve(t.gain_base);
}

CMatrix riccati_stabilizing(const SymbolR& sym, const RiccatiOptions& opts) {
  sym.validate();
  if (!(opts.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Riccati tolerance must be positive");
  }
  const auto n = sym.states();
  CMatrix Q = CMatrix::Zero(n, n);
  if (opts.observer) opts.observer(Q);
  if (n == 0) {
    if (!(min_hermitian_eig(sym.R0) > opts.tol)) {
      throw Error(ErrorCode::NoStabilizingSolution, "R0 is not positive definite");
    }
    return Q;
  }

  bool settled = false;
  for (int k = 0; k < opts.max_iter; ++k) {
    const auto t = riccati_terms(sym, Q);
    const double margin = min_hermitian_eig(t.schur);
    if (!(margin > opts.tol)) {
      throw Error(ErrorCode::NoStabilizingSolution,
                  "R0 - Gamma*Q Gamma lost positivity at iteration " +
                      std::to_string(k) + " (min eigenvalue " +
                      std::to_string(margin) + ")");
    }
    CMatrix next = riccati_map(sym, Q, t);
    if (!all_finite(next)) {
      throw Error(ErrorCode::NoStabilizingSolution, "iteration diverged");
    }
    const double step = (next - Q).norm();
    Q = std::move(next);
    if (opts.observer) opts.observer(Q);
    if (step < opts.tol * (1.0 + Q.norm())) {
      settled = true;
      break;
    }
  }
  if (!settled) {
    throw Error(ErrorCode::NoStabilizingSolution,
                "iteration did not settle in " + std::to_string(opts.max_iter) +
                    " steps");
  }
  const auto t = riccati_terms(sym, Q);
  if (!(min_hermitian_eig(t.schur) > opts.tol)) {
    throw Error(ErrorCode::NoStabilizingSolution,
                "R0 - Gamma*Q Gamma is not positive definite");
  }
  const double rho = spectral_radius(closed_loop(sym, Q));
  if (!(rho < 1.0 - kStabilityMargin)) {
    throw Error(ErrorCode::NoStabilizingSolution,
                "closed loop spectral radius " + std::to_string(rho));
  }
  return Q;
}

SpectralFactor outer_factor(const SymbolR& sym, const CMatrix& Q, double tol) {
  sym.validate();
  const auto n = sym.states();
  const auto m = sym.size();
  require_shape(Q, n, n, "Q");

  const double residual = riccati_residual(sym, Q);
  if (residual > tol * (1.0 + Q.norm())) {
    throw Error(ErrorCode::NotStabilizing,
                "Riccati residual " + std::to_string(residual));
  }
  const auto t = riccati_terms(sym, Q);
  if (!(min_hermitian_eig(t.schur) > 0.0)) {
    throw Error(ErrorCode::NotStabilizing,
                "R0 - Gamma*Q Gamma is not positive definite");
  }

  SpectralFactor sf;
  sf.Q = Q;
  sf.Phi0 = psd_sqrt(t.schur, tol);
  const Eigen::LDLT<CMatrix> schur_ldlt(t.schur);
  sf.CPhi = sf.Phi0 * schur_ldlt.solve(t.gain_base);
  sf.Ax = sym.A - sym.Gamma * schur_ldlt.solve(t.gain_base);
  if (!(spectral_radius(sf.Ax) < 1.0 - kStabilityMargin)) {
    throw Error(ErrorCode::NotStabilizing, "closed loop is not stable");
  }

  const CMatrix Phi0_inv = sf.Phi0.partialPivLu().solve(CMatrix::Identity(m, m));
  sf.phi = Realization{sym.A, sym.Gamma, sf.CPhi, sf.Phi0};
  sf.phi_inv = Realization{sf.Ax, sym.Gamma * Phi0_inv, -Phi0_inv * sf.CPhi,
                           Phi0_inv};
  return sf;
}

}  // namespace leech
