#include "cliffbvp/fueter.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <sstream>

#include "cliffbvp/error.hpp"
#include "cliffbvp/numerics.hpp"

namespace cliffbvp {
namespace {

void check_degree(const MultiIndex& alpha, int max_degree) {
  if (alpha.degree() > max_degree)
    throw InvalidInput("multi-index degree " + std::to_string(alpha.degree()) +
                       " exceeds the maximum " + std::to_string(max_degree));
}

// Generator indices 1..n repeated α_j times, ascending: the first permutation.
std::vector<int> multiset_of(const MultiIndex& alpha) {
  std::vector<int> seq;
  for (int j = 0; j < alpha.n(); ++j)
    for (int r = 0; r < alpha[j]; ++r) seq.push_back(j + 1);
  return seq;
}

double factorial_of(int k) { return std::tgamma(k + 1.0); }

Multivector multiply(const Multivector& a, const Multivector& b, Side side) {
  return side == Side::left ? product(a, b) : product(b, a);
}

Multivector kernel_derivative_integral(const SurfaceMesh& mesh, const BoundaryDensity& f,
                                       const KernelDerivative& dk, Side side) {
  return pairwise_sum<Multivector>(
      mesh.size(),
      [&](std::size_t i) {
        const Multivector e = dk(mesh.node(i)).to_multivector();
        const Multivector nu = oriented_measure(mesh, i);
        return side == Side::left ? product(product(e, nu), f[i]) : product(product(f[i], nu), e);
      },
      Multivector(f.n()));
}

}  // namespace

Multivector hyper_variable(int j, std::span<const double> x) {
  const int n = static_cast<int>(x.size()) - 1;
  if (j < 1 || j > n) throw InvalidInput("hyper_variable index must lie in 1..n");
  Multivector z = Multivector::scalar(n, x[static_cast<std::size_t>(j)]);
  z[1u << (j - 1)] = -x[0];
  return z;
}

Multivector symmetric_power(const MultiIndex& alpha, std::span<const double> x, int max_degree) {
  const int n = static_cast<int>(x.size()) - 1;
  if (alpha.n() != n) throw ContextMismatch("multi-index and point from different algebras");
  check_degree(alpha, max_degree);
  std::vector<Multivector> z;
  for (int j = 1; j <= n; ++j) z.push_back(hyper_variable(j, x));
  std::vector<int> seq = multiset_of(alpha);
  Multivector sum(n);
  do {
    Multivector term = Multivector::scalar(n, 1.0);
    for (int j : seq) term = product(term, z[static_cast<std::size_t>(j - 1)]);
    sum += term;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return sum;
}

std::size_t symmetric_power_term_count(const MultiIndex& alpha) {
  std::vector<int> seq = multiset_of(alpha);
  std::size_t count = 0;
  do {
    ++count;
  } while (std::next_permutation(seq.begin(), seq.end()));
  return count;
}

Polynomial Polynomial::coordinate(int variables, int k, double coeff) {
  Polynomial p(variables);
  Exponents e(static_cast<std::size_t>(variables), 0);
  e[static_cast<std::size_t>(k)] = 1;
  p.add_term(e, coeff);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int v : e) s += v;
    d = std::max(d, s);
  }
  return d;
}

void Polynomial::add_term(const Exponents& e, double coeff) {
  if (static_cast<int>(e.size()) != variables_) throw InvalidInput("monomial has wrong arity");
  auto [it, inserted] = terms_.try_emplace(e, coeff);
  if (!inserted) it->second += coeff;
  if (it->second == 0.0) terms_.erase(it);
}

Polynomial Polynomial::derivative(int k) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    const int p = e[static_cast<std::size_t>(k)];
    if (p == 0) continue;
    Exponents d = e;
    --d[static_cast<std::size_t>(k)];
    out.add_term(d, c * p);
  }
  return out;
}

Polynomial Polynomial::times_coordinate(int k) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    Exponents d = e;
    ++d[static_cast<std::size_t>(k)];
    out.add_term(d, c);
  }
  return out;
}

Polynomial Polynomial::times_norm_squared() const {
  Polynomial out(variables_);
  for (int k = 0; k < variables_; ++k) out += times_coordinate(k).times_coordinate(k);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

double Polynomial::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != variables_) throw ContextMismatch("polynomial arity mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c;
    for (std::size_t k = 0; k < e.size(); ++k)
      for (int p = 0; p < e[k]; ++p) t *= x[k];
    sum += t;
  }
  return sum;
}

KernelDerivative::KernelDerivative(MultiIndex alpha, std::vector<Polynomial> numerators,
                                   int exponent)
    : alpha_(std::move(alpha)), numerators_(std::move(numerators)), exponent_(exponent) {}

Paravector KernelDerivative::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n() + 1) throw ContextMismatch("kernel point dimension");
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (r2 == 0.0) throw SingularInput("kernel derivative evaluated at the origin");
  const double inv = std::pow(r2, -0.5 * exponent_);
  Paravector out(n());
  for (int k = 0; k <= n(); ++k) out[k] = numerators_[static_cast<std::size_t>(k)](x) * inv;
  return out;
}

const KernelDerivative& kernel_derivative(const MultiIndex& alpha, int max_degree) {
  check_degree(alpha, max_degree);
  static std::mutex mutex;
  static std::map<MultiIndex, std::unique_ptr<KernelDerivative>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(alpha); it != cache.end()) return *it->second;

  const int n = alpha.n();
  const int vars = n + 1;
  std::vector<Polynomial> p;
  p.push_back(Polynomial::coordinate(vars, 0));
  for (int k = 1; k <= n; ++k) p.push_back(Polynomial::coordinate(vars, k, -1.0));
  int s = n + 1;
  for (int j = 1; j <= n; ++j) {
    for (int r = 0; r < alpha[j - 1]; ++r) {
      for (auto& q : p) {
        Polynomial next = q.derivative(j).times_norm_squared();
        Polynomial tail = q.times_coordinate(j);
        tail *= -static_cast<double>(s);
        next += tail;
        q = std::move(next);
      }
      s += 2;
    }
  }
  auto [it, inserted] =
      cache.emplace(alpha, std::make_unique<KernelDerivative>(alpha, std::move(p), s));
  return *it->second;
}

void HyperPolynomial::add_term(const MultiIndex& alpha, const Multivector& coeff) {
  if (alpha.n() != n_ || coeff.n() != n_) throw ContextMismatch("hyperpolynomial term algebra");
  for (auto& t : terms_)
    if (t.alpha == alpha) {
      t.coeff += coeff;
      return;
    }
  terms_.push_back({alpha, coeff});
}

int HyperPolynomial::degree(double tol) const {
  int d = -1;
  for (const auto& t : terms_)
    if (t.coeff.norm() > tol) d = std::max(d, t.alpha.degree());
  return d;
}

Multivector HyperPolynomial::operator()(std::span<const double> x) const {
  Multivector sum(n_);
  for (const auto& t : terms_)
    sum += multiply(symmetric_power(t.alpha, x, std::max(kDefaultMaxDegree, t.alpha.degree())),
                    t.coeff, side_);
  return sum;
}

HyperPolynomial& HyperPolynomial::operator+=(const HyperPolynomial& other) {
  if (other.n_ != n_ || other.side_ != side_) throw ContextMismatch("hyperpolynomial mismatch");
  for (const auto& t : other.terms_) add_term(t.alpha, t.coeff);
  return *this;
}

HyperPolynomial taylor_component(const SurfaceMesh& mesh, const BoundaryDensity& f, int k,
                                 Side side) {
  if (f.n() != mesh.n() || f.size() != mesh.size())
    throw ContextMismatch("density is not aligned with the mesh");
  if (k < 0) throw InvalidInput("Taylor degree must be non-negative");
  if (mesh.spec() && mesh.spec()->classify(as_span(Point(static_cast<std::size_t>(mesh.dim()), 0.0))) !=
                         Region::interior)
    throw DomainError("Taylor expansion needs a surface enclosing the origin");
  // The trapezoid-type rules stop resolving ∂^α E once the degree approaches
  // the number of nodes across the surface.
  const double radius = mesh.max_node_radius();
  if ((k + 2) * mesh.h() > radius)
    throw InvalidInput("mesh too coarse for a Taylor component of degree " + std::to_string(k));
  HyperPolynomial out(mesh.n(), side);
  const double scale = ((k % 2) ? -1.0 : 1.0) / (unit_sphere_area(mesh.n()) * factorial_of(k));
  for (const auto& alpha : multi_indices_of_degree(mesh.n(), k)) {
    const auto& dk = kernel_derivative(alpha, std::max(kDefaultMaxDegree, k));
    out.add_term(alpha, kernel_derivative_integral(mesh, f, dk, side) * scale);
  }
  return out;
}

Multivector boundary_moment(const SurfaceMesh& mesh, const BoundaryDensity& g,
                            const MultiIndex& alpha, Side side) {
  if (g.n() != mesh.n() || g.size() != mesh.size())
    throw ContextMismatch("density is not aligned with the mesh");
  const int max_degree = std::max(kDefaultMaxDegree, alpha.degree());
  return pairwise_sum<Multivector>(
      mesh.size(),
      [&](std::size_t i) {
        const Multivector z = symmetric_power(alpha, mesh.node(i), max_degree);
        const Multivector nu = oriented_measure(mesh, i);
        return side == Side::left ? product(product(z, nu), g[i]) : product(product(g[i], nu), z);
      },
      Multivector(g.n()));
}

MomentTable moment_table(const SurfaceMesh& mesh, const BoundaryDensity& g, int max_degree,
                         Side side, bool estimate_errors) {
  const auto indices = multi_indices_up_to(mesh.n(), max_degree);
  std::vector<Multivector> values(indices.size(), Multivector(mesh.n()));
  parallel_for(indices.size(),
               [&](std::size_t a) { values[a] = boundary_moment(mesh, g, indices[a], side); });

  std::vector<double> errors(indices.size(), 0.0);
  if (estimate_errors && mesh.spec() && g.has_evaluator()) {
    const SurfaceMesh fine = refine(mesh);
    const auto g_fine = BoundaryDensity::sample(fine, g.evaluator(), g.regularity());
    parallel_for(indices.size(), [&](std::size_t a) {
      errors[a] = (boundary_moment(fine, g_fine, indices[a], side) - values[a]).norm();
    });
  }

  MomentTable table;
  table.n = mesh.n();
  table.max_degree = max_degree;
  table.side = side;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    table.values.emplace(indices[a], values[a]);
    table.error_estimates.emplace(indices[a], errors[a]);
  }
  return table;
}

LaurentTerm::LaurentTerm(int k, double rho, Side side,
                         std::vector<std::pair<MultiIndex, Multivector>> moments)
    : k_(k), rho_(rho), side_(side), moments_(std::move(moments)) {}

Multivector LaurentTerm::operator()(std::span<const double> w) const {
  double r2 = 0.0;
  for (double c : w) r2 += c * c;
  if (std::sqrt(r2) <= rho_)
    throw DomainError("Laurent terms are only valid outside the ball of radius ρ");
  const int n = static_cast<int>(w.size()) - 1;
  Multivector sum(n);
  for (const auto& [alpha, moment] : moments_) {
    const Multivector e = kernel_derivative(alpha, std::max(kDefaultMaxDegree, k_))(w).to_multivector();
    sum += side_ == Side::left ? product(e, moment) : product(moment, e);
  }
  const double scale = ((k_ % 2) ? -1.0 : 1.0) / (unit_sphere_area(n) * factorial_of(k_));
  return sum * scale;
}

LaurentTerm laurent_term(const SurfaceMesh& mesh, const BoundaryDensity& g, int k, Side side) {
  if (k < 0) throw InvalidInput("Laurent degree must be non-negative");
  std::vector<std::pair<MultiIndex, Multivector>> moments;
  for (const auto& alpha : multi_indices_of_degree(mesh.n(), k))
    moments.emplace_back(alpha, boundary_moment(mesh, g, alpha, side));
  return LaurentTerm(k, mesh.max_node_radius(), side, std::move(moments));
}

OrderAtInfinity order_at_infinity(const MomentTable& table, double scale, double rho) {
  OrderAtInfinity out;
  std::ostringstream detail;
  for (int d = 0; d <= table.max_degree; ++d) {
    double largest = 0.0;
    bool found = false;
    for (const auto& alpha : multi_indices_of_degree(table.n, d)) {
      const double value = table.values.at(alpha).norm();
      const auto err = table.error_estimates.find(alpha);
      const double noise = err == table.error_estimates.end() ? 0.0 : err->second;
      const double threshold = std::max(10.0 * noise, 1e-8 * scale * std::pow(rho, d));
      largest = std::max(largest, value);
      if (value > threshold) found = true;
    }
    detail << "|α|=" << d << " max moment " << largest << "; ";
    if (found) {
      out.kind = OrderAtInfinity::Kind::finite;
      out.order = -table.n - d;
      out.raw = d;
      out.detail = detail.str();
      return out;
    }
  }
  out.kind = OrderAtInfinity::Kind::undetermined;
  out.detail = detail.str() + "all moments below threshold";
  return out;
}

OrderAtInfinity order_at_infinity(const SurfaceMesh& mesh, const BoundaryDensity& g, Side side,
                                  int max_degree) {
  if (g.max_norm() == 0.0) {
    OrderAtInfinity out;
    out.kind = OrderAtInfinity::Kind::minus_infinity;
    out.detail = "zero density";
    return out;
  }
  const MomentTable table = moment_table(mesh, g, max_degree, side);
  return order_at_infinity(table, g.max_norm() * mesh.total_weight(), mesh.max_node_radius());
}

OrderAtInfinity empirical_order_at_infinity(const Evaluator& phi, int n, double r_min, int radii,
                                            double ratio, int rays, std::uint64_t seed) {
  if (radii < 2 || rays < 1 || !(r_min > 0.0) || !(ratio > 1.0))
    throw InvalidInput("empirical order needs >= 2 radii, >= 1 ray, r_min > 0, ratio > 1");
  Rng rng(seed);
  std::vector<Point> directions;
  while (static_cast<int>(directions.size()) < rays) {
    Point u = random_point(n, rng, -1.0, 1.0);
    double norm = 0.0;
    for (double c : u) norm += c * c;
    norm = std::sqrt(norm);
    if (norm < 0.1) continue;
    for (double& c : u) c /= norm;
    directions.push_back(u);
  }
  std::vector<double> rs, peaks;
  for (double r : geometric_sequence(r_min, ratio, radii)) {
    double peak = 0.0;
    for (const auto& u : directions) {
      Point w;
      for (double c : u) w.push_back(r * c);
      peak = std::max(peak, phi(as_span(w)).norm());
    }
    rs.push_back(r);
    peaks.push_back(peak);
  }
  OrderAtInfinity out;
  if (std::all_of(peaks.begin(), peaks.end(), [](double p) { return p == 0.0; })) {
    out.kind = OrderAtInfinity::Kind::minus_infinity;
    out.detail = "identically zero on every ray sample";
    return out;
  }
  const OrderFit fit = fit_order(rs, peaks, 0.0);
  if (fit.points_used < 2) {
    out.detail = "fewer than two non-zero samples";
    return out;
  }
  out.kind = OrderAtInfinity::Kind::finite;
  out.raw = fit.order;
  out.order = static_cast<int>(std::lround(fit.order));
  out.detail = "log-slope " + std::to_string(fit.order);
  return out;
}

Multivector dirac_apply(const Evaluator& f, std::span<const double> x, double step, Side side) {
  if (!(step > 0.0)) throw InvalidInput("finite-difference step must be positive");
  const int n = static_cast<int>(x.size()) - 1;
  Multivector sum(n);
  for (int k = 0; k <= n; ++k) {
    Point plus(x.begin(), x.end()), minus(x.begin(), x.end());
    plus[static_cast<std::size_t>(k)] += step;
    minus[static_cast<std::size_t>(k)] -= step;
    Multivector dk = (f(as_span(plus)) - f(as_span(minus))) / (2.0 * step);
    if (k == 0) {
      sum += dk;
    } else {
      const Multivector e = Multivector::blade(n, 1u << (k - 1));
      sum += side == Side::left ? product(e, dk) : product(dk, e);
    }
  }
  return sum;
}

}  // namespace cliffbvp
