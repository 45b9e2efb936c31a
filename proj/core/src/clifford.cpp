#include "cliffbvp/clifford.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "cliffbvp/error.hpp"

namespace cliffbvp {
namespace {

// Reordering sign of e_a e_b: one transposition per pair (i in a, j in b)
// with i > j, and one factor -1 per shared generator.
int compute_sign(unsigned a, unsigned b) {
  int swaps = 0;
  for (unsigned rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  swaps += std::popcount(a & b);
  return (swaps & 1) ? -1 : 1;
}

struct SignTables {
  std::array<std::vector<std::int8_t>, kMaxGenerators + 1> tables;

  SignTables() {
    for (int n = 1; n <= kMaxGenerators; ++n) {
      const unsigned dim = 1u << n;
      auto& t = tables[static_cast<std::size_t>(n)];
      t.resize(static_cast<std::size_t>(dim) * dim);
      for (unsigned a = 0; a < dim; ++a)
        for (unsigned b = 0; b < dim; ++b)
          t[a * dim + b] = static_cast<std::int8_t>(compute_sign(a, b));
    }
  }
};

const std::int8_t* sign_table(int n) {
  static const SignTables tables;
  return tables.tables[static_cast<std::size_t>(n)].data();
}

void require_same(int a, int b) {
  if (a != b)
    throw ContextMismatch("algebra mismatch: C(V_" + std::to_string(a) + ") vs C(V_" +
                          std::to_string(b) + ")");
}

void require_valid_n(int n) {
  if (n < 1 || n > kMaxGenerators)
    throw InvalidInput("number of generators must lie in [1, 8], got " + std::to_string(n));
}

double conjugation_sign(unsigned mask) {
  const int k = std::popcount(mask);
  return ((k * (k + 1) / 2) & 1) ? -1.0 : 1.0;
}

}  // namespace

AlgebraContext::AlgebraContext(int n) : n_(n) { require_valid_n(n); }

int grade(unsigned mask) noexcept { return std::popcount(mask); }

int blade_sign(int n, unsigned a, unsigned b) {
  require_valid_n(n);
  const unsigned dim = 1u << n;
  if (a >= dim || b >= dim) throw InvalidInput("blade index out of range");
  return sign_table(n)[a * dim + b];
}

// --- Multivector -----------------------------------------------------------

Multivector::Multivector(int n) : n_(n) {
  require_valid_n(n);
  coeffs_.assign(std::size_t{1} << n, 0.0);
}

Multivector::Multivector(int n, std::span<const double> coeffs) : Multivector(n) {
  if (coeffs.size() != coeffs_.size())
    throw InvalidInput("coefficient array has length " + std::to_string(coeffs.size()) +
                       ", expected " + std::to_string(coeffs_.size()));
  std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

Multivector Multivector::scalar(int n, double value) {
  Multivector m(n);
  m.coeffs_[0] = value;
  return m;
}

Multivector Multivector::blade(int n, unsigned mask, double coeff) {
  Multivector m(n);
  if (mask >= m.size()) throw InvalidInput("blade index out of range");
  m.coeffs_[mask] = coeff;
  return m;
}

bool Multivector::is_paravector(double tol) const {
  for (unsigned mask = 0; mask < coeffs_.size(); ++mask)
    if (grade(mask) > 1 && std::abs(coeffs_[mask]) > tol) return false;
  return true;
}

double Multivector::norm_squared() const noexcept {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return s;
}

double Multivector::norm() const { return std::sqrt(norm_squared()); }

double Multivector::max_abs() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Multivector& Multivector::operator+=(const Multivector& other) {
  require_same(n_, other.n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& other) {
  require_same(n_, other.n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) noexcept {
  for (double& c : coeffs_) c *= s;
  return *this;
}

void Multivector::add_scaled(const Multivector& other, double s) {
  require_same(n_, other.n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * other.coeffs_[i];
}

Multivector operator*(const Multivector& a, const Multivector& b) { return product(a, b); }

bool operator==(const Multivector& a, const Multivector& b) {
  return a.n_ == b.n_ && std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin());
}

std::ostream& operator<<(std::ostream& os, const Multivector& m) {
  os << '[';
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) os << ", ";
    os << m[static_cast<unsigned>(i)];
  }
  return os << ']';
}

// --- Paravector ------------------------------------------------------------

Paravector::Paravector(int n) {
  require_valid_n(n);
  comps_.assign(static_cast<std::size_t>(n) + 1, 0.0);
}

Paravector::Paravector(const Point& comps) : comps_(comps) {
  require_valid_n(static_cast<int>(comps.size()) - 1);
}

double Paravector::norm_squared() const noexcept {
  double s = 0.0;
  for (double c : comps_) s += c * c;
  return s;
}

double Paravector::norm() const { return std::sqrt(norm_squared()); }

Paravector Paravector::conjugate() const {
  Paravector out(*this);
  for (std::size_t k = 1; k < out.comps_.size(); ++k) out.comps_[k] = -out.comps_[k];
  return out;
}

Multivector Paravector::to_multivector() const {
  Multivector m(n());
  m[0] = comps_[0];
  for (int k = 1; k <= n(); ++k) m[1u << (k - 1)] = comps_[static_cast<std::size_t>(k)];
  return m;
}

Paravector& Paravector::operator*=(double s) noexcept {
  for (double& c : comps_) c *= s;
  return *this;
}

// --- free functions --------------------------------------------------------

Multivector product(const Multivector& a, const Multivector& b) {
  require_same(a.n(), b.n());
  const int n = a.n();
  const unsigned dim = 1u << n;
  const std::int8_t* signs = sign_table(n);
  Multivector out(n);
  for (unsigned i = 0; i < dim; ++i) {
    const double ai = a[i];
    if (ai == 0.0) continue;
    const std::int8_t* row = signs + i * dim;
    for (unsigned j = 0; j < dim; ++j) {
      const double bj = b[j];
      if (bj == 0.0) continue;
      out[i ^ j] += row[j] * ai * bj;
    }
  }
  return out;
}

Multivector product(const Paravector& a, const Multivector& b) {
  require_same(a.n(), b.n());
  const int n = a.n();
  const unsigned dim = 1u << n;
  const std::int8_t* signs = sign_table(n);
  Multivector out(n);
  for (int k = 0; k <= n; ++k) {
    const double ak = a[k];
    if (ak == 0.0) continue;
    const unsigned i = k == 0 ? 0u : 1u << (k - 1);
    const std::int8_t* row = signs + i * dim;
    for (unsigned j = 0; j < dim; ++j) out[i ^ j] += row[j] * ak * b[j];
  }
  return out;
}

Multivector product(const Multivector& a, const Paravector& b) {
  require_same(a.n(), b.n());
  const int n = a.n();
  const unsigned dim = 1u << n;
  const std::int8_t* signs = sign_table(n);
  Multivector out(n);
  for (int k = 0; k <= n; ++k) {
    const double bk = b[k];
    if (bk == 0.0) continue;
    const unsigned j = k == 0 ? 0u : 1u << (k - 1);
    for (unsigned i = 0; i < dim; ++i) out[i ^ j] += signs[i * dim + j] * a[i] * bk;
  }
  return out;
}

Multivector conjugate(const Multivector& a) {
  Multivector out(a);
  for (unsigned mask = 0; mask < out.size(); ++mask) out[mask] *= conjugation_sign(mask);
  return out;
}

Paravector conjugate(const Paravector& x) { return x.conjugate(); }

double norm(const Multivector& a) { return a.norm(); }
double norm(const Paravector& x) { return x.norm(); }

Paravector paravector_inverse(const Paravector& x) {
  const double n2 = x.norm_squared();
  if (n2 == 0.0) throw SingularInput("inverse of the zero paravector");
  return x.conjugate() * (1.0 / n2);
}

Multivector divide(const Multivector& a, const Paravector& b, DivisionSide side) {
  const Paravector inv = paravector_inverse(b);
  return side == DivisionSide::left ? product(inv, a) : product(a, inv);
}

Paravector embed_point(std::span<const double> p) {
  if (p.empty() || p.size() > kMaxGenerators + 1)
    throw InvalidInput("point dimension must lie in [2, 9]");
  Point comps(p.begin(), p.end());
  return Paravector(comps);
}

Paravector as_paravector(const Multivector& x, double tol) {
  if (!x.is_paravector(tol))
    throw InvalidInput("multivector has components outside grades {0, 1}");
  Paravector out(x.n());
  out[0] = x[0];
  for (int k = 1; k <= x.n(); ++k) out[k] = x[1u << (k - 1)];
  return out;
}

Point project_paravector(const Multivector& x, double tol) {
  return as_paravector(x, tol).components();
}

}  // namespace cliffbvp
