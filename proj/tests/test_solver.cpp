#include <cmath>

#include <gtest/gtest.h>

#include "leech/kernels.hpp"
#include "leech/solver.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

namespace leech {
namespace {

using testing::Rng;

CMatrix Scalar(Complex v) { return CMatrix::Constant(1, 1, v); }

double GridMax(int points, const std::function<double(Complex)>& f) {
  return kernels::circle_max(points, f, Exec::Serial);
}

Realization ThetaRealization(const CMatrix& A, const CMatrix& CPhi,
                             const ThetaFactor& theta) {
  return {A, theta.B, CPhi, theta.D};
}

void ExpectCode(ErrorCode expected, const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "expected " << to_string(expected);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
  }
}

GTEST_TEST(InnerThetaTest, ExampleData) {
  const ThetaFactor t =
      inner_theta(Scalar(0.0), Scalar(2.0 / std::sqrt(3.0)), Scalar(4.0 / 3.0));
  ASSERT_EQ(t.r(), 1);
  EXPECT_NEAR(std::abs(t.B(0, 0) - std::sqrt(3.0) / 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(t.D(0, 0)), 0.0, 1e-12);
}

GTEST_TEST(InnerThetaTest, NoStates) {
  const ThetaFactor t = inner_theta(CMatrix(0, 0), CMatrix(2, 0), CMatrix(0, 0));
  ASSERT_EQ(t.r(), 2);
  EXPECT_EQ(t.B.rows(), 0);
  EXPECT_LT((t.D.adjoint() * t.D - CMatrix::Identity(2, 2)).norm(), 1e-14);
}

GTEST_TEST(InnerThetaTest, RandomIdentitiesAndUnitarity) {
  Rng rng(51);
  for (int trial = 0; trial < 6; ++trial) {
    const auto inst = testing::random_solvable(rng, 1 + trial % 3, 1 + trial % 2, 2, 3, 1);
    const SymbolR sym = build_symbol(inst.data);
    const SpectralFactor sf = outer_factor(sym, riccati_stabilizing(sym));
    const ThetaFactor t = inner_theta(sym.A, sf.CPhi, sf.Q);
    const auto r = t.r();
    ASSERT_EQ(r, sym.size());
    const CMatrix& A = sym.A;
    EXPECT_LT((A.adjoint() * sf.Q * t.B + sf.CPhi.adjoint() * t.D).norm(), 1e-10);
    EXPECT_LT((t.B.adjoint() * sf.Q * t.B + t.D.adjoint() * t.D -
               CMatrix::Identity(r, r)).norm(),
              1e-10);
    const Realization theta = ThetaRealization(A, sf.CPhi, t);
    EXPECT_LT(GridMax(256,
                      [&](Complex z) {
                        const CMatrix v = eval(theta, z);
                        return (v * v.adjoint() - CMatrix::Identity(r, r)).norm();
                      }),
              1e-8);
  }
}

GTEST_TEST(InnerThetaTest, Degenerate) {
  // Q singular on the null space.
  ExpectCode(ErrorCode::DegenerateKernel,
             [] { inner_theta(Scalar(0.0), Scalar(0.0), Scalar(0.0)); });
}

GTEST_TEST(BuildFTest, FactorsSymbol) {
  Rng rng(52);
  for (int trial = 0; trial < 6; ++trial) {
    const auto inst = testing::random_solvable(rng, 1 + trial % 3, 2, 1 + trial % 2, 3, 2);
    const SymbolR sym = build_symbol(inst.data);
    const SpectralFactor sf = outer_factor(sym, riccati_stabilizing(sym));
    const ThetaFactor t = inner_theta(sym.A, sf.CPhi, sf.Q);
    const Realization F = build_F(sf, t, inst.data);
    const Realization theta = ThetaRealization(sym.A, sf.CPhi, t);
    EXPECT_LT(GridMax(256,
                      [&](Complex z) {
                        const CMatrix f = eval(F, z);
                        return (f * f.adjoint() - sym.eval(z)).norm();
                      }),
              1e-8);
    // Phi = Theta F* on the circle.
    EXPECT_LT(GridMax(64,
                      [&](Complex z) {
                        return (eval(sf.phi, z) -
                                eval(theta, z) * eval(F, z).adjoint())
                            .norm();
                      }),
              1e-8);
    // P3 = Q^{-1} is the Gramian of (A, B3).
    EXPECT_LT((ctrl_gramian(sym.A, F.B) - sf.Q.inverse()).norm(),
              1e-8 * sf.Q.inverse().norm());
  }
}

GTEST_TEST(SolvabilityTest, Cases) {
  const auto v = solvability_check(Scalar(0.0), Scalar(0.25), Scalar(0.75), 1e-9);
  EXPECT_TRUE(v.solvable);
  EXPECT_NEAR(v.margin, 1.0, 1e-15);
  const auto bad = solvability_check(Scalar(1.0), Scalar(0.25), Scalar(0.5), 1e-9);
  EXPECT_FALSE(bad.solvable);
  EXPECT_NEAR(bad.margin, -0.25, 1e-15);
  EXPECT_TRUE(solvability_check(CMatrix(0, 0), CMatrix(0, 0), CMatrix(0, 0), 1e-9).solvable);
  EXPECT_TRUE(solvability_check(Scalar(0.5), Scalar(0.5 - 1e-12), Scalar(0.0), 1e-9).solvable);
}

GTEST_TEST(PartialIsometryTest, ExampleData) {
  const double s = 1.0 / std::sqrt(2.0);
  const double h = std::sqrt(3.0) / 2.0;
  CMatrix DM(1, 3), BM(1, 3), DN(1, 3), BN(1, 3);
  DM << 0.0, s, s;
  BM << 1.0, 0.0, 0.0;
  DN << 1.0, 0.0, 0.0;
  BN << 0.0, 0.5, h;
  const CMatrix U = partial_isometry(DM, BM, DN, BN, Scalar(1.0));
  CMatrix expected(3, 3);
  expected << 0.0, 0.5, h, s, 0.0, 0.0, s, 0.0, 0.0;
  EXPECT_LT((U - expected).norm(), 1e-12);
  EXPECT_LT((U * U.adjoint() * U - U).norm(), 1e-12);
}

GTEST_TEST(PartialIsometryTest, EqualDataGivesProjection) {
  Rng rng(53);
  const CMatrix DM = testing::random_matrix(rng, 2, 4);
  const CMatrix BM = testing::random_matrix(rng, 1, 4);
  const CMatrix U = partial_isometry(DM, BM, DM, BM, Scalar(1.0), 1e-11);
  EXPECT_LT((U * U - U).norm(), 1e-10);
  EXPECT_LT((U - U.adjoint()).norm(), 1e-10);
  EXPECT_EQ(numerical_rank(U, 1e-8), 3);
}

GTEST_TEST(SolveTest, ExampleData) {
  const LeechSolution sol = solve(testing::example_data());
  EXPECT_EQ(sol.branch, Branch::StrictlyPositive);
  EXPECT_NEAR(sol.Q(0, 0).real(), 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(sol.P3(0, 0).real(), 0.75, 1e-10);
  EXPECT_NEAR(sol.Upsilon(0, 0).real(), 1.0, 1e-10);
  EXPECT_NEAR(sol.Y(0, 0).real(), 1.0, 1e-10);
  const double c = 1.0 / (2.0 * std::sqrt(2.0));
  for (Complex z : {Complex(0.5), Complex(0.2, -0.7), Complex(0.0, 1.0)}) {
    const CMatrix x = eval(sol.X, z);
    EXPECT_LT((x - CMatrix::Constant(2, 1, z * c)).norm(), 1e-10);
    const CMatrix psi = eval(sol.Psi, z);
    EXPECT_LT((psi - CMatrix::Constant(2, 1, z * std::sqrt(3.0) * c)).norm(), 1e-10);
  }
  EXPECT_LT(sol.diagnostics.leech_residual, 1e-12);
  EXPECT_NEAR(sol.diagnostics.contraction_margin, 0.0, 1e-10);
}

GTEST_TEST(SolveTest, EqualDataUsesZeroBranch) {
  Rng rng(54);
  const auto inst = testing::random_solvable(rng, 2, 1, 2, 3, 1);
  LeechData d = inst.data;
  d.B2 = d.B1;
  d.D2 = d.D1;
  const LeechSolution sol = solve(d);
  EXPECT_EQ(sol.branch, Branch::RIdenticallyZero);
  EXPECT_EQ(sol.F.inputs(), 0);
  EXPECT_LT(sol.diagnostics.leech_residual, 1e-8);
  EXPECT_LE(hinf_norm_grid(sol.X), 1.0 + 1e-8);
}

GTEST_TEST(SolveTest, ZeroSymbolExample) {
  const LeechSolution sol = solve(testing::r_zero_data());
  EXPECT_EQ(sol.branch, Branch::RIdenticallyZero);
  EXPECT_NEAR(sol.P2(0, 0).real(), 1.0, 1e-12);
  const double c = 1.0 / std::sqrt(2.0);
  const Complex z(0.3, 0.4);
  EXPECT_LT((eval(sol.X, z) - CMatrix::Constant(2, 1, z * c)).norm(), 1e-10);
  EXPECT_NEAR(hinf_norm_grid(sol.X), 1.0, 1e-10);
}

GTEST_TEST(SolveTest, RandomSolvableInstances) {
  Rng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_solvable(rng, 1 + trial % 3, 1 + (trial / 3) % 3,
                                               1 + trial % 3, 2 + trial % 3 + 1, 1 + trial % 2);
    const auto& d = inst.data;
    const LeechSolution sol = solve(d);
    EXPECT_LT(sol.diagnostics.leech_residual, 1e-7) << trial;
    EXPECT_LT(sol.diagnostics.psi_residual, 1e-7) << trial;
    EXPECT_LE(hinf_norm_grid(hstack_shared(sol.X, sol.Psi)), 1.0 + 1e-7) << trial;
    EXPECT_LT(sol.diagnostics.partial_isometry_residual, 1e-9) << trial;
    // McMillan degree bound: the realization of X lives on the n-dimensional state.
    EXPECT_EQ(sol.X.states(), d.n());
    EXPECT_EQ(sol.U.rows(), d.n() + d.p());
    EXPECT_EQ(sol.U.cols(), d.n() + d.q() + sol.F.inputs());
    EXPECT_LT((sol.P3 - ctrl_gramian(d.A, sol.F.B)).norm(), 1e-8 * (1.0 + sol.P3.norm()));
    // Independent recheck of G X = K at points inside the disc.
    for (int k = 0; k < 3; ++k) {
      const Complex z = testing::random_disc_point(rng);
      EXPECT_LT((eval(d.G(), z) * eval(sol.X, z) - eval(d.K(), z)).norm(), 1e-7);
    }
  }
}

GTEST_TEST(SolveTest, GaugeInvariance) {
  Rng rng(56);
  const auto inst = testing::random_solvable(rng, 2, 2, 2, 4, 1);
  const LeechSolution sol = solve(inst.data);
  const auto r = sol.F.inputs();
  for (int k = 0; k < 5; ++k) {
    const CMatrix V = testing::random_unitary(rng, r);
    Realization F = sol.F;
    F.B = F.B * V;
    F.D = F.D * V;
    const LeechSolution other = assemble_solution(inst.data, F, sol.P3, sol.branch);
    EXPECT_LT((other.X.B - sol.X.B).norm(), 1e-10);
    EXPECT_LT((other.X.C - sol.X.C).norm(), 1e-10);
    EXPECT_LT((other.X.D - sol.X.D).norm(), 1e-10);
  }
}

GTEST_TEST(SolveTest, SerialMatchesParallel) {
  Rng rng(57);
  const auto inst = testing::random_solvable(rng, 2, 1, 2, 3, 2);
  SolveOptions serial;
  serial.exec = Exec::Serial;
  const LeechSolution a = solve(inst.data);
  const LeechSolution b = solve(inst.data, serial);
  EXPECT_LT((a.X.D - b.X.D).norm() + (a.X.C - b.X.C).norm(), 1e-12);
  EXPECT_EQ(a.diagnostics.leech_residual, b.diagnostics.leech_residual);
}

GTEST_TEST(SolveTest, Infeasible) {
  LeechData d = testing::example_data();
  d.B2 *= 4.0;
  try {
    solve(d);
    ADD_FAILURE();
  } catch (const SolveError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSolvable);
    EXPECT_LT(e.diagnostics().symbol_min_eig, -1.0);
  }
}

GTEST_TEST(SolveTest, SolvabilityMarginFailure) {
  // G = z, K = 1/2: R = 3/4 is strictly positive, yet X = 1/(2z) is not
  // analytic. P3 + P2 - P1 = 3/4 + 0 - 1.
  const LeechData d{Scalar(0.0), Scalar(1.0), Scalar(0.0),
                    Scalar(1.0), Scalar(0.0), Scalar(0.5)};
  try {
    solve(d);
    ADD_FAILURE();
  } catch (const SolveError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSolvable);
    EXPECT_NEAR(e.diagnostics().solvability_margin, -0.25, 1e-10);
  }
}

GTEST_TEST(SolveTest, SemidefiniteSymbol) {
  const LeechData d{Scalar(0.0), Scalar(0.0), Scalar(0.5),
                    Scalar(1.0), Scalar(1.0), Scalar(0.5)};
  try {
    solve(d);
    ADD_FAILURE();
  } catch (const SolveError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SemidefiniteUnsupported);
    EXPECT_GT(e.diagnostics().symbol_min_eig, -1e-9);
  }
}

GTEST_TEST(SolveTest, NonMinimalRejectedOnRequest) {
  LeechData d;
  d.A = CMatrix::Zero(2, 2);
  d.C = CMatrix::Zero(1, 2);
  d.C(0, 0) = 1.0;
  d.B1 = CMatrix::Zero(2, 2);
  d.B2 = CMatrix::Zero(2, 1);
  d.B2(0, 0) = 0.5;
  d.D1 = CMatrix::Constant(1, 2, 1.0 / std::sqrt(2.0));
  d.D2 = Scalar(0.0);
  SolveOptions opts;
  opts.allow_nonminimal = false;
  ExpectCode(ErrorCode::NonMinimal, [&] { solve(d, opts); });
}

}  // namespace
}  // namespace leech
