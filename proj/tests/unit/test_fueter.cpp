#include <gtest/gtest.h>

#include <cmath>

#include "cliffbvp/cauchy.hpp"
#include "cliffbvp/error.hpp"
#include "cliffbvp/fueter.hpp"

using namespace cliffbvp;

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

SurfaceMesh unit(SurfaceKind kind, int level) { return build_mesh(DomainSpec::unit(kind), level); }

}  // namespace

TEST(Fueter, HyperVariablesAreRegular) {
  const double x[] = {0.3, -0.2, 0.7, 0.1};
  for (int j = 1; j <= 3; ++j) {
    const Evaluator z = [j](std::span<const double> p) { return hyper_variable(j, p); };
    EXPECT_LT(dirac_apply(z, x, 1e-3, Side::left).max_abs(), 1e-10);
    EXPECT_LT(dirac_apply(z, x, 1e-3, Side::right).max_abs(), 1e-10);
    const Multivector v = z(x);
    EXPECT_DOUBLE_EQ(v[0], x[j]);
    EXPECT_DOUBLE_EQ(v[1u << (j - 1)], -x[0]);
  }
}

TEST(Fueter, SymmetricPowersAreRegular) {
  const double x[] = {0.4, -0.3, 0.5};
  for (const MultiIndex& alpha : {MultiIndex{2, 0}, MultiIndex{1, 1}, MultiIndex{2, 1}, MultiIndex{1, 3}}) {
    const Evaluator z = [&](std::span<const double> p) { return symmetric_power(alpha, p); };
    EXPECT_LT(dirac_apply(z, x, 1e-4, Side::left).max_abs(), 1e-7) << alpha.to_string();
    EXPECT_LT(dirac_apply(z, x, 1e-4, Side::right).max_abs(), 1e-7) << alpha.to_string();
  }
}

TEST(Fueter, TermCountIsMultinomial) {
  for (const MultiIndex& alpha : {MultiIndex{3, 0}, MultiIndex{1, 1}, MultiIndex{2, 2}, MultiIndex{1, 2, 1}}) {
    double expected = factorial(alpha.degree());
    for (int k = 0; k < alpha.n(); ++k) expected /= factorial(alpha[k]);
    EXPECT_EQ(symmetric_power_term_count(alpha), static_cast<std::size_t>(std::lround(expected)));
  }
}

TEST(Fueter, SymmetricPowerOfOneVariableIsThePower) {
  const double x[] = {0.3, 0.8};
  const Multivector z = hyper_variable(1, x);
  EXPECT_LT((symmetric_power(MultiIndex{3}, x) - z * z * z).max_abs(), 1e-14);
}

TEST(Fueter, KernelDerivativeMatchesFiniteDifferences) {
  const double origin[] = {0.0, 0.0, 0.0};
  const double x[] = {0.6, -0.5, 0.9};
  const double step = 1e-4;
  // α counts derivatives in x_1..x_n.
  for (int k = 1; k < 3; ++k) {
    MultiIndex alpha(2);
    alpha[k - 1] = 1;
    double xp[] = {x[0], x[1], x[2]}, xm[] = {x[0], x[1], x[2]};
    xp[k] += step;
    xm[k] -= step;
    const Multivector fd = (kernel_E(xp, origin).to_multivector() - kernel_E(xm, origin).to_multivector()) / (2 * step);
    EXPECT_LT((kernel_derivative(alpha)(x).to_multivector() - fd).max_abs(), 1e-7) << k;
  }
}

TEST(Fueter, PolynomialCalculus) {
  Polynomial p = Polynomial::coordinate(2, 0);
  p = p.times_coordinate(1).times_coordinate(1);  // x0 x1^2
  const double x[] = {2.0, 3.0};
  EXPECT_DOUBLE_EQ(p(x), 18.0);
  EXPECT_DOUBLE_EQ(p.derivative(1)(x), 12.0);
  EXPECT_EQ(p.degree(), 3);
  EXPECT_DOUBLE_EQ(p.times_norm_squared()(x), 18.0 * 13.0);
  EXPECT_TRUE(p.derivative(0).derivative(0).is_zero());
}

// The Taylor component of degree k of a homogeneous regular polynomial is itself.
TEST(Fueter, TaylorComponentReproducesPolynomial) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 4);
  const Multivector c = Multivector::scalar(2, 1.5) + Multivector::blade(2, 3u, -0.5);
  const MultiIndex alpha{1, 1};
  const auto f = BoundaryDensity::sample(mesh, [&](std::span<const double> x) { return symmetric_power(alpha, x) * c; });
  const HyperPolynomial p2 = taylor_component(mesh, f, 2);
  const HyperPolynomial p1 = taylor_component(mesh, f, 1);
  const double x[] = {0.2, -0.3, 0.25};
  EXPECT_LT((p2(x) - f.evaluator()(x)).max_abs(), 1e-3);
  EXPECT_LT(p1(x).max_abs(), 1e-3);
}

TEST(Fueter, LaurentSeriesMatchesCauchyIntegralFarAway) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 3);
  const auto g = BoundaryDensity::sample(mesh, [](std::span<const double> x) {
    Multivector m(2);
    m[0] = 1.0 + x[0] * x[1];
    m[2] = x[2];
    return m;
  });
  const double w[] = {3.0, 1.0, -2.0};
  Multivector series(2);
  for (int k = 0; k <= 6; ++k) series -= laurent_term(mesh, g, k)(w);
  const Multivector direct = cauchy_integral(mesh, g, w).value;
  EXPECT_LT((series - direct).max_abs(), 1e-4 * direct.max_abs() + 1e-8);
  const double near[] = {0.5, 0.0, 0.0};
  EXPECT_THROW(laurent_term(mesh, g, 0)(near), DomainError);
}

TEST(Fueter, OrderAtInfinityFromMoments) {
  const SurfaceMesh mesh = unit(SurfaceKind::sphere2, 4);
  // Interior-regular traces have vanishing moments, which a finite table cannot tell from -inf.
  const auto inner = BoundaryDensity::sample(mesh, [](std::span<const double> x) { return symmetric_power(MultiIndex{1, 1}, x); });
  EXPECT_EQ(order_at_infinity(mesh, inner).kind, OrderAtInfinity::Kind::undetermined);
  EXPECT_EQ(order_at_infinity(mesh, BoundaryDensity::constant(mesh, Multivector(2))).kind,
            OrderAtInfinity::Kind::minus_infinity);
  // A kernel with its pole inside decays like |w|^-n.
  const double pole[] = {0.1, 0.2, -0.1};
  const auto kernel = BoundaryDensity::sample(
      mesh, [&](std::span<const double> x) { return kernel_E(x, pole).to_multivector(); });
  const OrderAtInfinity o = order_at_infinity(mesh, kernel);
  EXPECT_EQ(o.kind, OrderAtInfinity::Kind::finite);
  EXPECT_EQ(o.order, -2);
}

TEST(Fueter, EmpiricalOrder) {
  const double origin[] = {0.0, 0.0, 0.0};
  const Evaluator e = [&](std::span<const double> w) { return kernel_E(w, origin).to_multivector(); };
  const OrderAtInfinity o = empirical_order_at_infinity(e, 2, 4.0);
  EXPECT_EQ(o.kind, OrderAtInfinity::Kind::finite);
  EXPECT_EQ(o.order, -2);
  const Evaluator zero = [](std::span<const double>) { return Multivector(2); };
  EXPECT_EQ(empirical_order_at_infinity(zero, 2, 4.0).kind, OrderAtInfinity::Kind::minus_infinity);
}
