#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cliffbvp/cauchy.hpp"
#include "cliffbvp/error.hpp"
#include "cliffbvp/fueter.hpp"

using namespace cliffbvp;
using cplx = std::complex<double>;

namespace {

Multivector from_complex(cplx z) {
  Multivector m(1);
  m[0] = z.real();
  m[1] = z.imag();
  return m;
}

SurfaceMesh unit(SurfaceKind kind, int level) { return build_mesh(DomainSpec::unit(kind), level); }

}  // namespace

TEST(Cauchy, UnitSphereAreas) {
  EXPECT_NEAR(unit_sphere_area(1), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(2), 4.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(3), 2.0 * std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Cauchy, KernelIsConjugateOverPower) {
  const double x[] = {0.3, -0.4, 1.2, 0.5}, w[] = {-0.1, 0.2, 0.1, -0.3};
  const Paravector e = kernel_E(x, w);
  double r2 = 0.0;
  for (int k = 0; k < 4; ++k) r2 += (x[k] - w[k]) * (x[k] - w[k]);
  const double scale = std::pow(r2, -2.0);
  EXPECT_NEAR(e[0], (x[0] - w[0]) * scale, 1e-15);
  for (int k = 1; k < 4; ++k) EXPECT_NEAR(e[k], -(x[k] - w[k]) * scale, 1e-15);
  EXPECT_THROW(kernel_E(x, x), SingularInput);
}

TEST(Cauchy, KernelIsLeftAndRightRegular) {
  const double x[] = {0.3, -0.4, 1.2};
  const double origin[] = {0.0, 0.0, 0.0};
  const Evaluator E = [&](std::span<const double> p) { return kernel_E(p, origin).to_multivector(); };
  EXPECT_LT(dirac_apply(E, x, 1e-4, Side::left).max_abs(), 1e-7);
  EXPECT_LT(dirac_apply(E, x, 1e-4, Side::right).max_abs(), 1e-7);
}

// (1/2πi)∮ f(τ)/(τ - z) dτ for f = Σ c_k τ^k on the unit circle.
TEST(Cauchy, CircleMatchesResidueFormulas) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 6);
  const cplx c[] = {{0.3, -0.2}, {1.0, 0.5}, {-0.7, 0.1}, {0.2, 0.9}, {0.4, -0.6}};
  const int powers[] = {-2, -1, 0, 1, 3};
  auto value = [&](cplx z, int sel) {
    cplx s = 0.0;
    for (int j = 0; j < 5; ++j)
      if (sel == 0 || (sel > 0) == (powers[j] >= 0)) s += c[j] * std::pow(z, powers[j]);
    return s;
  };
  const auto f = BoundaryDensity::sample(
      mesh, [&](std::span<const double> x) { return from_complex(value(cplx(x[0], x[1]), 0)); });
  for (cplx z : {cplx(0.1, 0.2), cplx(-0.5, 0.4), cplx(0.0, -0.8)}) {
    const double w[] = {z.real(), z.imag()};
    EXPECT_LT((cauchy_integral(mesh, f, w).value - from_complex(value(z, 1))).norm(), 1e-10);
  }
  for (cplx z : {cplx(1.5, 0.2), cplx(-2.0, 1.0)}) {
    const double w[] = {z.real(), z.imag()};
    EXPECT_LT((cauchy_integral(mesh, f, w).value + from_complex(value(z, -1))).norm(), 1e-10);
  }
  for (std::size_t t : {0u, 17u, 500u}) {
    const cplx z(mesh.node(t)[0], mesh.node(t)[1]);
    const cplx expected = 0.5 * (value(z, 1) - value(z, -1));
    EXPECT_LT((principal_value(mesh, f, t).value - from_complex(expected)).norm(), 1e-10);
  }
}

TEST(Cauchy, SpanIndicator) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 3);
  const double in[] = {0.2, -0.1, 0.3}, out[] = {1.4, 0.2, 0.0};
  EXPECT_EQ(span_indicator(mesh, in).value, 1.0);
  EXPECT_EQ(span_indicator(mesh, out).value, 0.0);
  EXPECT_EQ(span_indicator(mesh, mesh.node(5)).value, 0.5);
}

TEST(Cauchy, ConstantPrincipalValueByCapLimit) {
  const SurfaceMesh circle = unit(SurfaceKind::circle, 6);
  const auto one = BoundaryDensity::constant(circle, Multivector::scalar(1, 1.0));
  for (std::size_t t : {0u, 100u, 777u}) {
    const auto pv = principal_value(circle, one, t, Side::left, PvMethod::delta_limit);
    EXPECT_NEAR(pv.value[0], 0.5, 1e-8);
    EXPECT_NEAR(pv.value[1], 0.0, 1e-8);
  }
  const SurfaceMesh sphere = unit(SurfaceKind::sphere2, 4);
  const auto one2 = BoundaryDensity::constant(sphere, Multivector::scalar(2, 1.0));
  for (std::size_t t : {0u, 2000u, 5000u}) {
    const auto pv = principal_value(sphere, one2, t, Side::left, PvMethod::delta_limit);
    EXPECT_LT((pv.value - Multivector::scalar(2, 0.5)).norm(), 5e-3);
  }
}

// Traces of interior-regular functions satisfy PV C[g] = g/2.
TEST(Cauchy, PrincipalValueOfRegularTrace) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 4);
  for (const MultiIndex& alpha : {MultiIndex{1, 0}, MultiIndex{1, 1}, MultiIndex{0, 2}}) {
    const auto g = BoundaryDensity::sample(mesh, [&](std::span<const double> x) { return symmetric_power(alpha, x); });
    for (Side side : {Side::left, Side::right})
      for (std::size_t t : {3u, 1234u, 4000u}) {
        const auto pv = principal_value(mesh, g, t, side).value;
        EXPECT_LT((pv - g[t] * 0.5).norm(), 1e-3) << alpha.to_string();
      }
  }
}

TEST(Cauchy, PlemeljJumpIsTheDensity) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 5);
  const auto f = BoundaryDensity::sample(mesh, [](std::span<const double> x) {
    Multivector m(1);
    m[0] = std::exp(x[0]);
    m[1] = x[0] * x[1];
    return m;
  });
  for (std::size_t t : {0u, 9u, 300u}) {
    const PlemeljValues v = plemelj_values(mesh, f, t);
    EXPECT_LT((v.plus - v.minus - f[t]).norm(), 1e-14);
    const auto lambdas = default_approach_lambdas(mesh);
    const auto inner = normal_approach_limit(mesh, f, t, Region::interior, lambdas);
    const auto outer = normal_approach_limit(mesh, f, t, Region::exterior, lambdas);
    EXPECT_LT((inner.value - v.plus).norm(), 1e-4);
    EXPECT_LT((outer.value - v.minus).norm(), 1e-4);
  }
}

TEST(Cauchy, SymmetricDifferenceRecoversDensity) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 4);
  const auto f = BoundaryDensity::sample(mesh, [](std::span<const double> x) {
    Multivector m(2);
    m[0] = x[0] * x[2];
    m[3] = 1.0 + x[1];
    return m;
  });
  const auto lambdas = default_approach_lambdas(mesh);
  for (std::size_t t : {10u, 2600u}) {
    const auto d = symmetric_difference_limit(mesh, f, t, lambdas);
    EXPECT_LT((d.value - f[t]).norm(), 1e-2);
  }
}

TEST(Cauchy, DerivativeMatchesFiniteDifference) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 3);
  const auto f = BoundaryDensity::sample(mesh, [](std::span<const double> x) {
    Multivector m(2);
    m[0] = x[1];
    m[1] = x[0] * x[0];
    return m;
  });
  const double w[] = {0.1, -0.2, 0.15};
  const MultiIndex alpha{0, 1};
  const double step = 1e-5;
  double wp[] = {w[0], w[1], w[2] + step}, wm[] = {w[0], w[1], w[2] - step};
  const Multivector fd = (cauchy_integral(mesh, f, wp).value - cauchy_integral(mesh, f, wm).value) / (2 * step);
  EXPECT_LT((cauchy_derivative(mesh, f, w, alpha) - fd).norm(), 1e-6);
}

TEST(Cauchy, RightIntegralMirrorsLeft) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 2);
  const auto f = BoundaryDensity::constant(mesh, Multivector::blade(2, 1u));
  const double w[] = {0.1, 0.2, -0.1};
  // For the constant e_1 the interior value is e_1 on both sides.
  EXPECT_LT((cauchy_integral(mesh, f, w, Side::left).value - f[0]).norm(), 1e-3);
  EXPECT_LT((cauchy_integral(mesh, f, w, Side::right).value - f[0]).norm(), 1e-3);
}

TEST(Cauchy, HolderSpotCheck) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 4);
  const auto f = BoundaryDensity::sample(
      mesh, [](std::span<const double> x) { return Multivector::scalar(1, x[0]); }, HolderTag{1.0, 1.0});
  EXPECT_LE(holder_quotient(mesh, f, 1.0, 200), 1.0 + 1e-12);
  EXPECT_TRUE(spot_check_holder(mesh, f));
  const auto g = BoundaryDensity::sample(
      mesh, [](std::span<const double> x) { return Multivector::scalar(1, 10.0 * x[0]); }, HolderTag{1.0, 1.0});
  EXPECT_FALSE(spot_check_holder(mesh, g));
}

TEST(Cauchy, InputValidation) {
  const SurfaceMesh mesh = unit(SurfaceKind::circle, 2);
  const SurfaceMesh other = unit(SurfaceKind::circle, 3);
  const auto f = BoundaryDensity::constant(other, Multivector::scalar(1, 1.0));
  const double w[] = {0.1, 0.1};
  EXPECT_THROW(cauchy_integral(mesh, f, w), InvalidInput);
  const auto g = BoundaryDensity::constant(mesh, Multivector::scalar(1, 1.0));
  const double off[] = {0.5, 0.5};
  EXPECT_THROW(principal_value(mesh, g, std::span<const double>(off)), InvalidInput);
  const std::vector<double> rising{0.1, 0.2};
  EXPECT_THROW(normal_approach_limit(mesh, g, 0, Region::interior, rising), InvalidInput);
  const double w3[] = {0.1, 0.1, 0.1};
  EXPECT_THROW(cauchy_integral(mesh, g, w3), ContextMismatch);
}
