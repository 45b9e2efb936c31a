#include <gtest/gtest.h>

#include <cmath>

#include "cliffbvp/clifford.hpp"
#include "cliffbvp/error.hpp"
#include "cliffbvp/numerics.hpp"

using namespace cliffbvp;

namespace {

// Independent sign of e_a e_b: count transpositions bringing the product into
// canonical order, then one -1 per shared generator.
int reference_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned x = a >> 1; x; x >>= 1) swaps += __builtin_popcount(x & b);
  const int squares = __builtin_popcount(a & b);
  return ((swaps + squares) % 2) ? -1 : 1;
}

double max_diff(const Multivector& a, const Multivector& b) { return (a - b).max_abs(); }

}  // namespace

TEST(Clifford, GeneratorsSquareToMinusOneAndAnticommute) {
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < n; ++i) {
      const Multivector ei = Multivector::blade(n, 1u << i);
      EXPECT_EQ(product(ei, ei), Multivector::scalar(n, -1.0));
      for (int j = i + 1; j < n; ++j) {
        const Multivector ej = Multivector::blade(n, 1u << j);
        EXPECT_EQ(product(ei, ej), -product(ej, ei));
      }
    }
}

TEST(Clifford, BladeSignMatchesReference) {
  for (int n = 1; n <= 5; ++n)
    for (unsigned a = 0; a < (1u << n); ++a)
      for (unsigned b = 0; b < (1u << n); ++b) EXPECT_EQ(blade_sign(n, a, b), reference_sign(a, b));
}

TEST(Clifford, ProductIsAssociativeOnRandomElements) {
  Rng rng(3);
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_multivector(n, rng), b = random_multivector(n, rng), c = random_multivector(n, rng);
      EXPECT_LT(max_diff(product(product(a, b), c), product(a, product(b, c))), 1e-12);
    }
}

TEST(Clifford, ConjugationReversesProducts) {
  Rng rng(4);
  for (int n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_multivector(n, rng), b = random_multivector(n, rng);
      EXPECT_LT(max_diff(conjugate(product(a, b)), product(conjugate(b), conjugate(a))), 1e-12);
      EXPECT_EQ(conjugate(conjugate(a)), a);
    }
}

TEST(Clifford, ConjugationSignByGrade) {
  // grade 0: +, 1: -, 2: -, 3: +
  const int n = 3;
  const int expected[] = {1, -1, -1, 1};
  for (unsigned mask = 0; mask < 8; ++mask) {
    const Multivector b = conjugate(Multivector::blade(n, mask));
    EXPECT_EQ(b[mask], expected[grade(mask)]);
  }
}

TEST(Clifford, ParavectorInverseAndNorm) {
  Rng rng(5);
  for (int n = 1; n <= 6; ++n)
    for (int trial = 0; trial < 200; ++trial) {
      Paravector x(n), y(n);
      for (int k = 0; k <= n; ++k) {
        x[k] = rng.uniform(-2.0, 2.0);
        y[k] = rng.uniform(-2.0, 2.0);
      }
      const Multivector one = Multivector::scalar(n, 1.0);
      const Multivector xi = paravector_inverse(x).to_multivector();
      EXPECT_LT(max_diff(product(x.to_multivector(), xi), one), 1e-12);
      EXPECT_LT(max_diff(product(xi, x.to_multivector()), one), 1e-12);
      // |XY| = |X||Y| for paravectors.
      EXPECT_NEAR(product(x.to_multivector(), y.to_multivector()).norm(), x.norm() * y.norm(), 1e-12);
      // X bar(X) = |X|^2
      EXPECT_LT(max_diff(product(x.to_multivector(), conjugate(x).to_multivector()),
                         Multivector::scalar(n, x.norm_squared())),
                1e-12);
    }
}

TEST(Clifford, DivisionSides) {
  Rng rng(6);
  const int n = 3;
  const auto a = random_multivector(n, rng);
  Paravector b(n);
  for (int k = 0; k <= n; ++k) b[k] = rng.uniform(0.5, 1.5);
  const Multivector left = divide(a, b, DivisionSide::left);
  const Multivector right = divide(a, b, DivisionSide::right);
  EXPECT_LT(max_diff(product(b.to_multivector(), left), a), 1e-12);
  EXPECT_LT(max_diff(product(right, b.to_multivector()), a), 1e-12);
}

TEST(Clifford, EmbeddingRoundTrip) {
  const Point p{0.5, -1.0, 2.0};
  const Paravector x = embed_point(as_span(p));
  EXPECT_EQ(x.n(), 2);
  EXPECT_EQ(project_paravector(x.to_multivector()), p);
}

TEST(Clifford, Errors) {
  EXPECT_THROW(product(Multivector(2), Multivector(3)), ContextMismatch);
  EXPECT_THROW(paravector_inverse(Paravector(2)), SingularInput);
  EXPECT_THROW(Multivector(0), InvalidInput);
  Multivector bivector = Multivector::blade(2, 3u);
  EXPECT_THROW(as_paravector(bivector), InvalidInput);
}
