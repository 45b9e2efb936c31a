#pragma once

// Dense arithmetic in the real Clifford algebra C(V_n) with generators
// e_1..e_n, e_i^2 = -1 and e_i e_j = -e_j e_i. Basis blades e_A are addressed
// by the bitmask of A (bit i-1 set <=> e_i in A); mask 0 is the unit e_0.

#include <boost/container/small_vector.hpp>
#include <boost/container/static_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>

namespace cliffbvp {

inline constexpr int kMaxGenerators = 8;

/// Number of generators n of C(V_n); the ambient space is R^{n+1}.
class AlgebraContext {
 public:
  explicit AlgebraContext(int n);

  int n() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return std::size_t{1} << n_; }

  friend bool operator==(AlgebraContext, AlgebraContext) = default;

 private:
  int n_;
};

/// A point of R^{n+1}, coordinates (x_0, x_1, ..., x_n).
using Point = boost::container::static_vector<double, kMaxGenerators + 1>;

inline std::span<const double> as_span(const Point& p) noexcept { return {p.data(), p.size()}; }

class Paravector;

class Multivector {
 public:
  using Storage = boost::container::small_vector<double, 16>;

  explicit Multivector(int n);
  Multivector(int n, std::span<const double> coeffs);

  static Multivector scalar(int n, double value);
  static Multivector blade(int n, unsigned mask, double coeff = 1.0);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  AlgebraContext context() const { return AlgebraContext(n_); }

  double operator[](unsigned mask) const { return coeffs_[mask]; }
  double& operator[](unsigned mask) { return coeffs_[mask]; }
  std::span<const double> coeffs() const noexcept { return {coeffs_.data(), coeffs_.size()}; }
  std::span<double> coeffs() noexcept { return {coeffs_.data(), coeffs_.size()}; }

  double scalar_part() const noexcept { return coeffs_[0]; }

  /// True when every coefficient outside grades {0, 1} is within `tol`.
  bool is_paravector(double tol = 0.0) const;

  double norm_squared() const noexcept;
  double norm() const;
  /// Largest coefficient magnitude.
  double max_abs() const noexcept;

  Multivector& operator+=(const Multivector& other);
  Multivector& operator-=(const Multivector& other);
  Multivector& operator*=(double s) noexcept;
  Multivector& operator/=(double s) noexcept { return *this *= 1.0 / s; }

  /// Adds s * other without forming a temporary.
  void add_scaled(const Multivector& other, double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator-(Multivector a) { return a *= -1.0; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  friend Multivector operator/(Multivector a, double s) { return a /= s; }
  friend Multivector operator*(const Multivector& a, const Multivector& b);

  friend bool operator==(const Multivector& a, const Multivector& b);

 private:
  int n_;
  Storage coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Multivector& m);

/// Element of span{e_0, ..., e_n}; component k is the coefficient of e_k.
class Paravector {
 public:
  explicit Paravector(int n);
  explicit Paravector(const Point& comps);

  int n() const noexcept { return static_cast<int>(comps_.size()) - 1; }
  double operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return comps_[static_cast<std::size_t>(k)]; }
  const Point& components() const noexcept { return comps_; }

  double norm_squared() const noexcept;
  double norm() const;

  Paravector conjugate() const;
  Multivector to_multivector() const;

  Paravector& operator*=(double s) noexcept;
  friend Paravector operator*(Paravector a, double s) { return a *= s; }

 private:
  Point comps_;
};

/// Sign of e_a * e_b = sign * e_{a xor b} under e_i^2 = -1.
int blade_sign(int n, unsigned a, unsigned b);
int grade(unsigned mask) noexcept;

Multivector product(const Multivector& a, const Multivector& b);
Multivector product(const Paravector& a, const Multivector& b);
Multivector product(const Multivector& a, const Paravector& b);

/// Clifford conjugation: bar(e_A) = (-1)^{k(k+1)/2} e_A with k = |A|.
Multivector conjugate(const Multivector& a);
Paravector conjugate(const Paravector& x);

double norm(const Multivector& a);
double norm(const Paravector& x);

/// bar(X) / |X|^2; throws SingularInput for X = 0.
Paravector paravector_inverse(const Paravector& x);

enum class DivisionSide { left, right };

/// left: b^{-1} a, right: a b^{-1}.
Multivector divide(const Multivector& a, const Paravector& b, DivisionSide side);

Paravector embed_point(std::span<const double> p);
/// Inverse of embed_point; rejects coefficients outside grades {0, 1}.
Point project_paravector(const Multivector& x, double tol = 0.0);
Paravector as_paravector(const Multivector& x, double tol = 0.0);

}  // namespace cliffbvp
