#include "leech/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace leech {

namespace {

void require_positive_N(int N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "truncation N must be >= 1");
}

void require_stable(const CMatrix& A) {
  if (!(spectral_radius(A) < 1.0 - kStabilityMargin)) {
    throw Error(ErrorCode::UnstableA, "section of an unstable realization");
  }
}

// C A^k for k = 0 .. count-1.
std::vector<CMatrix> observability_blocks(const CMatrix& A, const CMatrix& C,
                                          int count) {
  std::vector<CMatrix> blocks;
  blocks.reserve(count);
  CMatrix current = C;
  for (int k = 0; k < count; ++k) {
    blocks.push_back(current);
    current = current * A;
  }
  return blocks;
}

CMatrix resolvent_apply(const CMatrix& A, Complex z, const CMatrix& X) {
  const auto n = A.rows();
  if (n == 0) return X;
  return (CMatrix::Identity(n, n) - z * A).partialPivLu().solve(X);
}

}  // namespace

int default_truncation(const CMatrix& A) {
  const double rho = spectral_radius(A);
  if (rho <= 0.0) return 1;
  if (rho >= 1.0) return 400;
  const double N = std::ceil(std::log(1e-10) / std::log(rho));
  return static_cast<int>(std::clamp(N, 1.0, 400.0));
}

std::vector<CMatrix> markov_parameters(const Realization& omega, int count) {
  std::vector<CMatrix> out;
  out.reserve(count);
  if (count <= 0) return out;
  out.push_back(omega.D);
  CMatrix power_B = omega.B;
  for (int k = 1; k < count; ++k) {
    out.push_back(omega.C * power_B);
    power_B = omega.A * power_B;
  }
  return out;
}

CMatrix observability_section(const CMatrix& A, const CMatrix& C, int N) {
  require_positive_N(N);
  const auto blocks = observability_blocks(A, C, N);
  CMatrix W(N * C.rows(), A.cols());
  for (int k = 0; k < N; ++k) W.middleRows(k * C.rows(), C.rows()) = blocks[k];
  return W;
}

CMatrix controllability_section(const CMatrix& A, const CMatrix& B, int N) {
  require_positive_N(N);
  CMatrix W(A.rows(), N * B.cols());
  CMatrix current = B;
  for (int k = 0; k < N; ++k) {
    W.middleCols(k * B.cols(), B.cols()) = current;
    current = A * current;
  }
  return W;
}

BlockSection toeplitz_section(const Realization& omega, int N, Exec exec) {
  require_positive_N(N);
  require_stable(omega.A);
  const auto lower = markov_parameters(omega, N);
  const std::vector<CMatrix> upper(
      N, CMatrix::Zero(omega.outputs(), omega.inputs()));
  return {N, omega.outputs(), omega.inputs(),
          kernels::block_toeplitz(lower, upper, N, exec)};
}

BlockSection toeplitz_section(const SymbolR& sym, int N, Exec exec) {
  require_positive_N(N);
  require_stable(sym.A);
  const auto m = sym.size();
  std::vector<CMatrix> lower;
  std::vector<CMatrix> upper;
  lower.reserve(N);
  upper.reserve(N);
  lower.push_back(sym.R0);
  upper.push_back(sym.R0);
  CMatrix power_gamma = sym.Gamma;
  for (int k = 1; k < N; ++k) {
    CMatrix Rk = sym.C * power_gamma;
    upper.push_back(Rk.adjoint());
    lower.push_back(std::move(Rk));
    power_gamma = sym.A * power_gamma;
  }
  BlockSection s{N, m, m, kernels::block_toeplitz(lower, upper, N, exec)};
  s.M = hermitian_part(s.M);
  return s;
}

BlockSection hankel_section(const Realization& omega, int N, Exec exec) {
  require_positive_N(N);
  require_stable(omega.A);
  // coeffs[k] = C A^k B = Omega_{k+1}.
  auto markov = markov_parameters(omega, 2 * N);
  std::vector<CMatrix> coeffs(markov.begin() + 1, markov.end());
  return {N, omega.outputs(), omega.inputs(),
          kernels::block_hankel(coeffs, N, exec)};
}

CMatrix pick_kernel_matrix(const LeechData& data, std::span<const Complex> points,
                           const Realization* F, Exec exec) {
  for (const Complex& z : points) {
    if (std::abs(z) >= 1.0 - 1e-12) {
      throw Error(ErrorCode::PointOnBoundary,
                  "Pick point with modulus " + std::to_string(std::abs(z)));
    }
  }
  const int count = static_cast<int>(points.size());
  const auto m = data.m();
  if (count == 0) return CMatrix(0, 0);
  const Realization G = data.G();
  const Realization K = data.K();
  std::vector<CMatrix> g, k, f;
  for (const Complex& z : points) {
    g.push_back(eval(G, z));
    k.push_back(eval(K, z));
    if (F != nullptr) f.push_back(eval(*F, z));
  }
  CMatrix L = kernels::assemble_blocks(
      count, m, m,
      [&](int row, int col) -> CMatrix {
        CMatrix num = g[row] * g[col].adjoint() - k[row] * k[col].adjoint();
        if (F != nullptr) num -= f[row] * f[col].adjoint();
        return num / (1.0 - std::conj(points[col]) * points[row]);
      },
      exec);
  return hermitian_part(L);
}

CMatrix q_toeplitz_oracle(const SymbolR& sym, int N) {
  const auto T = toeplitz_section(sym, N).M;
  const CMatrix W = observability_section(sym.A, sym.C, N);
  Eigen::LLT<CMatrix> llt(T);
  if (llt.info() != Eigen::Success || !(min_hermitian_eig(T) > 0.0)) {
    throw Error(ErrorCode::SectionNotPositive,
                "Toeplitz section of R is not positive definite at N = " +
                    std::to_string(N));
  }
  return hermitian_part(W.adjoint() * llt.solve(W));
}

PositivityReport positivity_section_report(const LeechData& data, int N,
                                           const Realization* F) {
  require_positive_N(N);
  data.validate();
  const Realization G = data.G();
  const Realization K = data.K();

  // Route 1: products of lower-triangular sections. The N-section of
  // T_G T_G* only involves the first N block columns of T_G.
  const CMatrix TG = toeplitz_section(G, N).M;
  const CMatrix TK = toeplitz_section(K, N).M;
  CMatrix product_route = TG * TG.adjoint() - TK * TK.adjoint();

  // Route 2: T_{GG*} - H_G H_G*, with H_G H_G* = W P1 W*.
  const CMatrix W = observability_section(data.A, data.C, N);
  const CMatrix P1 = ctrl_gramian(data.A, data.B1);
  const CMatrix P2 = ctrl_gramian(data.A, data.B2);
  CMatrix hankel_route =
      toeplitz_section(product_symbol(G), N).M - W * P1 * W.adjoint() -
      (toeplitz_section(product_symbol(K), N).M - W * P2 * W.adjoint());

  if (F != nullptr) {
    const CMatrix TF = toeplitz_section(*F, N).M;
    product_route -= TF * TF.adjoint();
    const CMatrix WF = observability_section(F->A, F->C, N);
    const CMatrix P3 = ctrl_gramian(F->A, F->B);
    hankel_route -=
        toeplitz_section(product_symbol(*F), N).M - WF * P3 * WF.adjoint();
  }
  product_route = hermitian_part(product_route);

  PositivityReport report;
  report.min_eig = min_hermitian_eig(product_route);
  report.route_discrepancy = (product_route - hankel_route).norm();
  report.section = std::move(product_route);
  return report;
}

double positivity_section_check(const LeechData& data, int N,
                                const Realization* F) {
  return positivity_section_report(data, N, F).min_eig;
}

double fundamental_identity_residual(const LeechData& data, const Realization& F,
                                     const CMatrix& Upsilon, int samples,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&]() {
    const double r = 0.9 * std::sqrt(unit(rng));
    const double t = 2.0 * std::numbers::pi * unit(rng);
    return std::polar(r, t);
  };
  const Realization G = data.G();
  const Realization K = data.K();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Complex z = draw();
    const Complex lambda = draw();
    const CMatrix Lz = data.C * resolvent_apply(data.A, z, Upsilon);
    const CMatrix Ll = data.C * resolvent_apply(data.A, lambda, Upsilon);
    const CMatrix LL = Ll * Lz.adjoint();
    const CMatrix Gz = eval(G, z), Gl = eval(G, lambda);
    const CMatrix Kz = eval(K, z), Kl = eval(K, lambda);
    const CMatrix Fz = eval(F, z), Fl = eval(F, lambda);
    const CMatrix residual = lambda * std::conj(z) * LL + Gl * Gz.adjoint() -
                             LL - Kl * Kz.adjoint() - Fl * Fz.adjoint();
    worst = std::max(worst, spectral_norm(residual));
  }
  return worst;
}

}  // namespace leech
