#include "leech/solver.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace leech {

ThetaFactor inner_theta(const CMatrix& A, const CMatrix& CPhi, const CMatrix& Q,
                        double tol) {
  const auto n = A.rows();
  const auto r = CPhi.rows();
  require_shape(A, n, n, "A");
  require_shape(CPhi, r, n, "CPhi");
  require_shape(Q, n, n, "Q");
  if (n == 0) return {CMatrix(0, r), CMatrix::Identity(r, r)};

  const CMatrix map = hcat({A.adjoint() * Q, CMatrix(CPhi.adjoint())});
  Eigen::JacobiSVD<CMatrix> svd(map, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sigma(0));
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (sigma(k) > cutoff) ++rank;
  }
  const Eigen::Index nullity = n + r - rank;
  if (nullity != r) {
    throw Error(ErrorCode::DegenerateKernel,
                "null space of [A*Q CPhi*] has dimension " +
                    std::to_string(nullity) + ", expected " + std::to_string(r));
  }
  CMatrix basis = svd.matrixV().rightCols(r);

  // Gram-Schmidt in <u, v> = u_top* Q v_top + u_bot* v_bot, two sweeps.
  auto inner = [&](const CVector& u, const CVector& v) {
    return (u.head(n).adjoint() * Q * v.head(n)).value() +
           (u.tail(r).adjoint() * v.tail(r)).value();
  };
  for (Eigen::Index j = 0; j < r; ++j) {
    CVector v = basis.col(j);
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (Eigen::Index i = 0; i < j; ++i) {
        v -= inner(basis.col(i), v) * basis.col(i);
      }
    }
    const double norm2 = inner(v, v).real();
    if (!(norm2 > tol)) {
      throw Error(ErrorCode::DegenerateKernel,
                  "weighted norm vanishes on the null space (Q not positive)");
    }
    // Phase convention: the first entry of significant size is real positive.
    Eigen::Index pivot = 0;
    const double col_max = v.cwiseAbs().maxCoeff();
    while (std::abs(v(pivot)) <= 1e-6 * col_max) ++pivot;
    const Complex phase = std::conj(v(pivot)) / std::abs(v(pivot));
    basis.col(j) = phase * v / std::sqrt(norm2);
  }
  return {basis.topRows(n), basis.bottomRows(r)};
}

Realization build_F(const SpectralFactor& sf, const ThetaFactor& theta,
                    const LeechData& data) {
  const CMatrix& Gamma = sf.phi.B;
  Realization F;
  F.A = data.A;
  F.C = data.C;
  F.B = theta.B;
  F.D = sf.Phi0.adjoint() * theta.D + Gamma.adjoint() * sf.Q * theta.B;
  return F;
}

SolvabilityVerdict solvability_check(const CMatrix& P1, const CMatrix& P2,
                                     const CMatrix& P3, double tol) {
  SolvabilityVerdict verdict;
  verdict.margin = min_hermitian_eig(P3 + P2 - P1);
  verdict.solvable = verdict.margin >= -tol;
  return verdict;
}

CMatrix partial_isometry(const CMatrix& DM, const CMatrix& BM, const CMatrix& DN,
                         const CMatrix& BN, const CMatrix& Y, double rtol) {
  const CMatrix gram =
      hermitian_part(DM.adjoint() * DM + BM.adjoint() * Y * BM);
  const CMatrix cross = DM.adjoint() * DN + BM.adjoint() * Y * BN;
  const double cutoff = rtol > 0.0 ? rtol * spectral_norm(gram) : 0.0;
  return pinv(gram, cutoff) * cross;
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::StrictlyPositive: return "strictly_positive";
    case Branch::RIdenticallyZero: return "r_identically_zero";
  }
  return "unknown";
}

double leech_residual(const LeechData& data, const Realization& X, int grid,
                      Exec exec) {
  const Realization G = data.G();
  const Realization K = data.K();
  return kernels::circle_max(
      grid,
      [&](Complex z) {
        return spectral_norm(eval(G, z) * eval(X, z) - eval(K, z));
      },
      exec);
}

namespace {

double contract_residual(const Realization& G, const Realization& X,
                         const Realization& target, int grid, Exec exec) {
  if (target.inputs() == 0) return 0.0;
  return kernels::circle_max(
      grid,
      [&](Complex z) {
        return spectral_norm(eval(G, z) * eval(X, z) - eval(target, z));
      },
      exec);
}

}  // namespace

LeechSolution assemble_solution(const LeechData& data, const Realization& F,
                                const CMatrix& P3, Branch branch,
                                const SolveOptions& opts) {
  const auto n = data.n();
  const auto p = data.p();
  const auto q = data.q();
  const auto r = F.inputs();
  require_shape(F.B, n, r, "B3");
  require_shape(F.D, data.m(), r, "D3");
  require_shape(P3, n, n, "P3");

  LeechSolution sol;
  sol.branch = branch;
  sol.F = F;
  sol.P1 = ctrl_gramian(data.A, data.B1);
  sol.P2 = ctrl_gramian(data.A, data.B2);
  sol.P3 = P3;
  sol.diagnostics.branch = branch;

  const auto verdict = solvability_check(sol.P1, sol.P2, P3, opts.tol);
  sol.diagnostics.solvability_margin = verdict.margin;
  if (!verdict.solvable) {
    throw SolveError(ErrorCode::NotSolvable,
                     "P3 + P2 - P1 has eigenvalue " +
                         std::to_string(verdict.margin),
                     sol.diagnostics);
  }

  const CMatrix gap = hermitian_part(P3 + sol.P2 - sol.P1);
  sol.Upsilon = psd_sqrt(gap, opts.tol * (1.0 + gap.norm()));
  sol.Y = obs_gramian(data.A, data.C);

  const CMatrix DM = hcat({CMatrix::Zero(data.m(), n), data.D1});
  const CMatrix BM = hcat({sol.Upsilon, data.B1});
  const CMatrix DN = hcat({CMatrix(data.C * sol.Upsilon), data.D2, F.D});
  const CMatrix BN = hcat({CMatrix(data.A * sol.Upsilon), data.B2, F.B});
  sol.U = partial_isometry(DM, BM, DN, BN, sol.Y, opts.rank_rtol);

  const CMatrix alpha = sol.U.topLeftCorner(n, n);
  const CMatrix gamma = sol.U.bottomLeftCorner(p, n);
  sol.X = {alpha, sol.U.block(0, n, n, q), gamma, sol.U.block(n, n, p, q)};
  sol.Psi = {alpha, sol.U.block(0, n + q, n, r), gamma,
             sol.U.block(n, n + q, p, r)};

  auto& diag = sol.diagnostics;
  diag.partial_isometry_residual =
      (sol.U * sol.U.adjoint() * sol.U - sol.U).norm();
  if (!(spectral_radius(alpha) < 1.0 - kStabilityMargin)) {
    diag.warnings.push_back("state matrix of X is not strictly stable");
  }
  try {
    const Realization joint{alpha, sol.U.topRightCorner(n, q + r), gamma,
                            sol.U.bottomRightCorner(p, q + r)};
    diag.leech_residual = leech_residual(data, sol.X, opts.grid, opts.exec);
    diag.psi_residual =
        contract_residual(data.G(), sol.Psi, F, opts.grid, opts.exec);
    diag.contraction_margin =
        1.0 - hinf_norm_grid(joint, opts.grid, opts.exec);
  } catch (const Error& e) {
    diag.leech_residual = std::numeric_limits<double>::quiet_NaN();
    diag.contraction_margin = std::numeric_limits<double>::quiet_NaN();
    diag.warnings.push_back(std::string("grid check failed: ") + e.what());
  }
  if (!(diag.leech_residual < 1e-7)) {
    diag.warnings.push_back("Leech residual " +
                            std::to_string(diag.leech_residual) +
                            " exceeds 1e-7");
  }
  if (!(diag.contraction_margin >= -1e-7)) {
    diag.warnings.push_back("[X Psi] exceeds norm 1 on the grid by " +
                            std::to_string(-diag.contraction_margin));
  }
  return sol;
}

LeechSolution solve(const LeechData& data, const SolveOptions& opts) {
  data.validate();
  const auto n = data.n();
  const auto m = data.m();

  Diagnostics diag;
  diag.minimality = minimality_report(data);
  if (!diag.minimality.minimal()) {
    if (!opts.allow_nonminimal) {
      throw SolveError(ErrorCode::NonMinimal,
                       "realization of [G K] is not minimal", diag);
    }
    diag.warnings.push_back("realization of [G K] is not minimal");
  }

  const SymbolR sym = build_symbol(data);
  const CMatrix P1 = ctrl_gramian(data.A, data.B1);
  const CMatrix P2 = ctrl_gramian(data.A, data.B2);
  const double scale = 1.0 + data.D1.squaredNorm() + data.D2.squaredNorm() +
                       data.C.norm() * (P1.norm() + P2.norm());
  const bool r_is_zero =
      sym.R0.norm() + sym.Gamma.norm() < opts.zero_tol * scale;

  auto finish = [&diag](LeechSolution sol) {
    auto& out = sol.diagnostics;
    out.minimality = diag.minimality;
    out.riccati_residual = diag.riccati_residual;
    out.warnings.insert(out.warnings.begin(), diag.warnings.begin(),
                        diag.warnings.end());
    return sol;
  };
  auto with_context = [&diag](const SolveError& e) {
    Diagnostics merged = e.diagnostics();
    merged.minimality = diag.minimality;
    merged.riccati_residual = diag.riccati_residual;
    merged.warnings.insert(merged.warnings.begin(), diag.warnings.begin(),
                           diag.warnings.end());
    return SolveError(e.code(), e.what(), merged);
  };

  if (r_is_zero) {
    diag.branch = Branch::RIdenticallyZero;
    const Realization F{data.A, CMatrix(n, 0), data.C, CMatrix(m, 0)};
    try {
      return finish(assemble_solution(data, F, CMatrix::Zero(n, n),
                                      Branch::RIdenticallyZero, opts));
    } catch (const SolveError& e) {
      throw with_context(e);
    }
  }

  diag.branch = Branch::StrictlyPositive;
  CMatrix Q;
  try {
    RiccatiOptions ropts;
    ropts.tol = opts.riccati_tol;
    ropts.max_iter = opts.max_iter;
    Q = riccati_stabilizing(sym, ropts);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NoStabilizingSolution) throw;
    // T_G T_G* - T_K T_K* >= 0 forces R >= 0 on the circle, so a negative
    // value of R rules the problem out; otherwise R is only semidefinite.
    diag.branch.reset();
    diag.symbol_min_eig = kernels::circle_min(
        opts.grid,
        [&sym](Complex z) { return min_hermitian_eig(sym.eval(z)); },
        opts.exec);
    diag.solvability_margin = diag.symbol_min_eig;
    if (diag.symbol_min_eig < -opts.tol) {
      throw SolveError(ErrorCode::NotSolvable,
                       "R takes a negative value on the circle (" +
                           std::to_string(diag.symbol_min_eig) + ")",
                       diag);
    }
    throw SolveError(ErrorCode::SemidefiniteUnsupported,
                     std::string("R is nonnegative but not strictly positive "
                                 "on the circle: ") + e.what(),
                     diag);
  }
  diag.riccati_residual = riccati_residual(sym, Q);

  const SpectralFactor sf = outer_factor(sym, Q, opts.tol);
  const ThetaFactor theta = inner_theta(data.A, sf.CPhi, Q, opts.tol);
  const Realization F = build_F(sf, theta, data);
  const CMatrix P3 =
      n == 0 ? CMatrix(0, 0)
             : hermitian_part(Q.ldlt().solve(CMatrix::Identity(n, n)));

  try {
    LeechSolution sol =
        finish(assemble_solution(data, F, P3, Branch::StrictlyPositive, opts));
    sol.Q = Q;
    sol.theta = theta;
    return sol;
  } catch (const SolveError& e) {
    throw with_context(e);
  }
}

}  // namespace leech
