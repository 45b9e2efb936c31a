#pragma once

// Fueter variables z_j, symmetric powers, closed-form derivatives of the
// Cauchy kernel, Taylor/Laurent components and the order at infinity.

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cliffbvp/cauchy.hpp"
#include "cliffbvp/clifford.hpp"
#include "cliffbvp/multi_index.hpp"
#include "cliffbvp/surface.hpp"

namespace cliffbvp {

/// z_j(x) = x_j - x_0 e_j, for j in 1..n.
Multivector hyper_variable(int j, std::span<const double> x);

/// Z^α(x): sum over the distinct orderings of the multiset {z_1^α_1, ..., z_n^α_n}.
Multivector symmetric_power(const MultiIndex& alpha, std::span<const double> x,
                            int max_degree = kDefaultMaxDegree);
/// Number of products summed by symmetric_power (enumerated, not computed).
std::size_t symmetric_power_term_count(const MultiIndex& alpha);

/// Real polynomial in the coordinates x_0..x_n.
class Polynomial {
 public:
  using Exponents = std::vector<int>;

  explicit Polynomial(int variables = 0) : variables_(variables) {}
  static Polynomial coordinate(int variables, int k, double coeff = 1.0);

  int variables() const noexcept { return variables_; }
  const std::map<Exponents, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const;

  void add_term(const Exponents& e, double coeff);
  Polynomial derivative(int k) const;
  /// Multiplies by x_k.
  Polynomial times_coordinate(int k) const;
  /// Multiplies by |x|^2.
  Polynomial times_norm_squared() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);

  double operator()(std::span<const double> x) const;

 private:
  int variables_;
  std::map<Exponents, double> terms_;
};

/// ∂^α E(x) = (Σ_k P_k(x) e_k) / |x|^s with s = n + 1 + 2|α|.
class KernelDerivative {
 public:
  KernelDerivative(MultiIndex alpha, std::vector<Polynomial> numerators, int exponent);

  const MultiIndex& alpha() const noexcept { return alpha_; }
  const std::vector<Polynomial>& numerators() const noexcept { return numerators_; }
  int exponent() const noexcept { return exponent_; }
  int n() const noexcept { return alpha_.n(); }

  Paravector operator()(std::span<const double> x) const;

 private:
  MultiIndex alpha_;
  std::vector<Polynomial> numerators_;
  int exponent_;
};

/// Built by the quotient rule ∂_k[P/|x|^s] = (|x|^2 ∂_k P - s x_k P)/|x|^{s+2};
/// results are cached per α.
const KernelDerivative& kernel_derivative(const MultiIndex& alpha,
                                          int max_degree = kDefaultMaxDegree);

/// Σ_α Z^α c_α (left) or Σ_α c_α Z^α (right).
class HyperPolynomial {
 public:
  struct Term {
    MultiIndex alpha;
    Multivector coeff;
  };

  HyperPolynomial(int n, Side side = Side::left) : n_(n), side_(side) {}

  int n() const noexcept { return n_; }
  Side side() const noexcept { return side_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  void add_term(const MultiIndex& alpha, const Multivector& coeff);
  /// Highest |α| with a coefficient above tol; -1 for the zero polynomial.
  int degree(double tol = 0.0) const;

  Multivector operator()(std::span<const double> x) const;
  HyperPolynomial& operator+=(const HyperPolynomial& other);

 private:
  int n_;
  Side side_;
  std::vector<Term> terms_;
};

/// P_k[f] = (1/k!) Σ_{|α|=k} Z^α ∂^α f(0), with ∂^α f(0) taken from the
/// boundary integral ((-1)^{|α|}/∨) ∫ ∂^α E dσ f over a surface around 0.
HyperPolynomial taylor_component(const SurfaceMesh& mesh, const BoundaryDensity& f, int k,
                                 Side side = Side::left);

/// ∫ Z^α dσ g (left) or ∫ g dσ Z^α (right).
Multivector boundary_moment(const SurfaceMesh& mesh, const BoundaryDensity& g,
                            const MultiIndex& alpha, Side side = Side::left);

struct MomentTable {
  int n = 1;
  int max_degree = 0;
  Side side = Side::left;
  std::map<MultiIndex, Multivector> values;
  /// Per-entry quadrature error estimate (zero when none was available).
  std::map<MultiIndex, double> error_estimates;
};

/// Moments for all |α| <= max_degree. When the mesh carries a DomainSpec and
/// g has an evaluator, error estimates come from comparison with refine(mesh).
MomentTable moment_table(const SurfaceMesh& mesh, const BoundaryDensity& g, int max_degree,
                         Side side = Side::left, bool estimate_errors = true);

/// Q_k(w) = ((-1)^k/∨) Σ_{|α|=k} ∂^α E(w) moment(α) / k!, so that the
/// Cauchy-type integral equals -Σ_k Q_k(w) for |w| > ρ.
class LaurentTerm {
 public:
  LaurentTerm(int k, double rho, Side side, std::vector<std::pair<MultiIndex, Multivector>> moments);

  int k() const noexcept { return k_; }
  double rho() const noexcept { return rho_; }
  /// Throws DomainError for |w| <= ρ.
  Multivector operator()(std::span<const double> w) const;

 private:
  int k_;
  double rho_;
  Side side_;
  std::vector<std::pair<MultiIndex, Multivector>> moments_;
};

LaurentTerm laurent_term(const SurfaceMesh& mesh, const BoundaryDensity& g, int k,
                         Side side = Side::left);

struct OrderAtInfinity {
  enum class Kind { finite, minus_infinity, undetermined };
  Kind kind = Kind::undetermined;
  int order = 0;
  /// Moment route: N^l (or N^r). Empirical route: unrounded slope.
  double raw = 0.0;
  std::string detail;
};

/// Moment route: -n - N where N is the smallest |α| whose moment exceeds
/// max(10 · error estimate, 1e-8 · scale · ρ^|α|).
OrderAtInfinity order_at_infinity(const MomentTable& table, double scale, double rho);
OrderAtInfinity order_at_infinity(const SurfaceMesh& mesh, const BoundaryDensity& g,
                                  Side side = Side::left, int max_degree = kDefaultMaxDegree);

using Evaluator = std::function<Multivector(std::span<const double>)>;

/// Empirical route: slope of log max_rays |Φ(R u)| against log R, rounded.
/// Returns -∞ when Φ vanishes at every sample.
OrderAtInfinity empirical_order_at_infinity(const Evaluator& phi, int n, double r_min,
                                            int radii = 5, double ratio = 2.0, int rays = 8,
                                            std::uint64_t seed = 7);

/// Central-difference D f = Σ_k e_k ∂_k f (left) or Σ_k ∂_k f e_k (right).
Multivector dirac_apply(const Evaluator& f, std::span<const double> x, double step,
                        Side side = Side::left);

}  // namespace cliffbvp
