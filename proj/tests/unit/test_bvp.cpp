#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cliffbvp/bvp.hpp"
#include "cliffbvp/error.hpp"

using namespace cliffbvp;

namespace {

SurfaceMesh unit(SurfaceKind kind, int level) { return build_mesh(DomainSpec::unit(kind), level); }

Multivector random_multivector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector m(n);
  for (auto& c : m.coeffs()) c = u(rng);
  return m;
}

int choose(int a, int b) { return static_cast<int>(std::lround(std::tgamma(a + 1.0) / (std::tgamma(b + 1.0) * std::tgamma(a - b + 1.0)))); }

}  // namespace

TEST(Bvp, ConditionAndFreedomCounts) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 2);
  const auto g = BoundaryDensity::constant(mesh, Multivector::scalar(2, 1.0));
  const int n = 2;
  for (int m : {-5, -4, -3, -2, -1, 0, 1, 3}) {
    const SolvabilityReport r = solve_jump_rm(mesh, g, m).report;
    EXPECT_EQ(r.required_conditions, m < -n ? choose(-m - 1, n) : 0) << m;
    EXPECT_EQ(r.freedom, m >= 0 ? choose(n + m, m) : 0) << m;
  }
}

TEST(Bvp, JumpSolutionHasTheRightJump) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 5);
  const auto g = BoundaryDensity::sample(mesh, [](std::span<const double> x) {
    Multivector m(1);
    m[0] = x[0] * x[0];
    m[1] = std::sin(x[1]);
    return m;
  });
  const BvpResult r = solve_jump_rm(mesh, g, -1);
  ASSERT_TRUE(r.solution.has_value());
  for (std::size_t t : {0u, 100u, 400u}) {
    const PlemeljValues v = r.solution->boundary(t);
    EXPECT_LT((v.plus - v.minus - g[t]).max_abs(), 1e-12);
  }
}

TEST(Bvp, JumpRejectsDataWithNonzeroMoments) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 3);
  const auto one = BoundaryDensity::constant(mesh, Multivector::scalar(2, 1.0));
  // Order -3 demands the zeroth moment vanish; for g = 1 it equals the area times the mean normal, i.e. 0.
  EXPECT_EQ(solve_jump_rm(mesh, one, -3).report.verdict, Verdict::solvable);
  const double pole[] = {0.2, 0.0, 0.1};
  const auto kernel = BoundaryDensity::sample(
      mesh, [&](std::span<const double> x) { return kernel_E(x, pole).to_multivector(); });
  const BvpResult r = solve_jump_rm(mesh, kernel, -3);
  EXPECT_EQ(r.report.verdict, Verdict::unsolvable);
  EXPECT_FALSE(r.solution.has_value());
}

TEST(Bvp, MultivectorInverse) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const Multivector a = random_multivector(n, rng);
      const Multivector inv = multivector_inverse(a);
      EXPECT_LT((a * inv - Multivector::scalar(n, 1.0)).max_abs(), 1e-10);
      EXPECT_LT((inv * a - Multivector::scalar(n, 1.0)).max_abs(), 1e-10);
    }
  // In Cl(0,3) the pseudoscalar squares to +1, so 1 + e123 is a zero divisor.
  EXPECT_THROW(multivector_inverse(Multivector::scalar(3, 1.0) + Multivector::blade(3, 7u)), SingularInput);
}

TEST(Bvp, ConstantGapBoundaryResidual) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 5);
  const auto g = BoundaryDensity::sample(mesh, [](std::span<const double> x) { return Multivector::scalar(1, x[0] + 2.0); });
  const Multivector G = Multivector::scalar(1, 2.0) + Multivector::blade(1, 1u, 0.5);
  const BvpResult r = solve_constant_gap(mesh, g, G, -1);
  ASSERT_TRUE(r.solution.has_value());
  EXPECT_LT(gap_boundary_residual(mesh, g, *r.solution, G), 1e-10);
}

TEST(Bvp, DirichletSeparatesInteriorAndExteriorData) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 3);
  const auto inner = BoundaryDensity::sample(mesh, [](std::span<const double> x) { return hyper_variable(1, x); });
  const DirichletResult ok = solve_dirichlet(mesh, inner);
  EXPECT_TRUE(ok.solvable);
  EXPECT_TRUE(ok.solution.has_value());
  const double pole[] = {0.1, -0.2, 0.0};
  const auto outer = BoundaryDensity::sample(
      mesh, [&](std::span<const double> x) { return kernel_E(x, pole).to_multivector(); });
  const DirichletResult bad = solve_dirichlet(mesh, outer);
  EXPECT_FALSE(bad.solvable);
  EXPECT_EQ(solve_dirichlet(mesh, inner, DirichletMode::continuous).solvable, true);
}

// For constant φ the principal value is φ/2, so 3φ + 2(φ/2) = 1 gives φ = 1/4.
TEST(Bvp, CharacteristicEquationConstantSolution) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 4);
  const auto a = BoundaryDensity::constant(mesh, Multivector::scalar(1, 3.0));
  const auto b = BoundaryDensity::constant(mesh, Multivector::scalar(1, 1.0));
  const auto f = BoundaryDensity::constant(mesh, Multivector::scalar(1, 1.0));
  const auto coeffs = make_characteristic(a, b);
  EXPECT_NEAR(coeffs.G[0], 0.5, 1e-15);
  const BoundaryDensity phi = solve_characteristic_sie(mesh, coeffs, f);
  for (std::size_t t = 0; t < phi.size(); t += 37) EXPECT_LT((phi[t] - Multivector::scalar(1, 0.25)).max_abs(), 1e-10);
  for (const auto& r : characteristic_residual(mesh, coeffs, phi, f)) EXPECT_LT(r.max_abs(), 1e-10);
}

TEST(Bvp, CharacteristicRejectsSingularCoefficients) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 2);
  const auto a = BoundaryDensity::constant(mesh, Multivector::scalar(1, 1.0));
  EXPECT_THROW(make_characteristic(a, a), InvalidInput);
}

TEST(Bvp, CauchyOperatorIsAnInvolution) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 5);
  const auto f = BoundaryDensity::sample(mesh, [](std::span<const double> x) {
    Multivector m(1);
    m[0] = std::exp(x[1]);
    m[1] = x[0];
    return m;
  });
  const BoundaryDensity twice = invert_cauchy_pv(mesh, invert_cauchy_pv(mesh, f));
  for (std::size_t t = 0; t < f.size(); ++t) EXPECT_LT((twice[t] - f[t]).max_abs(), 1e-8);
}

TEST(Bvp, PoincareBertrandOnTheCircle) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 3);
  const auto f = BoundaryDensity::sample(mesh, [](std::span<const double> x) { return Multivector::scalar(1, 1.0 + x[0] * x[1]); });
  const PairKernel k = [](std::span<const double> x, std::span<const double> t) {
    return Multivector::scalar(1, 1.0 + x[0] * t[1]);
  };
  const PoincareBertrandReport r = poincare_bertrand_discrepancy(mesh, f, k);
  EXPECT_LT(r.special_case_max, 1e-6);
  EXPECT_LT(r.general_max, 1e-6);
  EXPECT_EQ(r.special_case.size(), 4u);
}
