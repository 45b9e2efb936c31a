#include "cliffbvp/cauchy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "cliffbvp/error.hpp"
#include "cliffbvp/fueter.hpp"

namespace cliffbvp {
namespace {

void check_density(const SurfaceMesh& mesh, const BoundaryDensity& f) {
  if (f.n() != mesh.n()) throw ContextMismatch("density and mesh live in different algebras");
  if (f.size() != mesh.size()) throw InvalidInput("density is not aligned with the mesh nodes");
}

void check_point(const SurfaceMesh& mesh, std::span<const double> w) {
  if (static_cast<int>(w.size()) != mesh.dim())
    throw ContextMismatch("point dimension does not match the mesh");
}

// E(x_i - w) ν_i w_i (left) or ν_i w_i E(x_i - w) (right).
Multivector kernel_measure(const SurfaceMesh& mesh, std::size_t i, const Paravector& e, Side side) {
  const Multivector nu = oriented_measure(mesh, i);
  return side == Side::left ? product(e, nu) : product(nu, e);
}

Multivector apply(const Multivector& k, const Multivector& f, Side side) {
  return side == Side::left ? product(k, f) : product(f, k);
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Central first-derivative weights c_1..c_r (c_{-k} = -c_k) by stencil radius.
std::span<const double> central_weights(int radius) {
  static const std::array<double, 1> r1{0.5};
  static const std::array<double, 2> r2{2.0 / 3.0, -1.0 / 12.0};
  static const std::array<double, 3> r3{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  static const std::array<double, 4> r4{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  switch (radius) {
    case 1: return r1;
    case 2: return r2;
    case 3: return r3;
    default: return r4;
  }
}

// Limit of the subtracted integrand at x = t on a closed curve, from
// derivatives along the node index: E(x_u) ν_t w_t f_u (left).
Multivector curve_singular_term(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t t,
                                Side side) {
  const Multivector fu = curve_derivative(mesh, t, [&](std::size_t i) { return f[i]; });
  const Point xu = curve_tangent(mesh, t);
  const std::array<double, 2> origin{0.0, 0.0};
  const Paravector e = kernel_E(as_span(xu), origin);
  return apply(kernel_measure(mesh, t, e, side), fu, side);
}

// Real matrix of c -> a c (left) or c -> c a (right) on the blade basis.
Eigen::MatrixXd multiplication_matrix(const Multivector& a, Side side) {
  const auto dim = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd m(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Multivector blade = Multivector::blade(a.n(), static_cast<unsigned>(col));
    const Multivector image = side == Side::left ? product(a, blade) : product(blade, a);
    for (Eigen::Index row = 0; row < dim; ++row) m(row, col) = image[static_cast<unsigned>(row)];
  }
  return m;
}

// Coefficients c_j of the one-sided regular linear function
// R(x) = Σ_j z_j(x - t) c_j (left) or Σ_j c_j z_j(x - t) (right) whose
// tangential derivatives at node t match those of f. The derivatives come
// from a local quadratic least-squares fit over the nearest nodes.
std::vector<Multivector> matching_regular_linear(const SurfaceMesh& mesh, const BoundaryDensity& f,
                                                 std::size_t t, Side side,
                                                 std::span<const double> dist) {
  const int n = mesh.n();
  const int dim = n + 1;
  const auto blades = static_cast<Eigen::Index>(std::size_t{1} << n);
  const int quadratic = n * (n + 1) / 2;
  const std::size_t wanted = static_cast<std::size_t>(std::max(3 * (n + quadratic), 12));
  const std::size_t k = std::min(wanted, mesh.size() - 1);

  std::vector<std::size_t> order(mesh.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::swap(order[t], order.back());
  std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                   order.end() - 1, [&](std::size_t a, std::size_t b) {
                     return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                   });

  Eigen::VectorXd nu(dim);
  for (int c = 0; c < dim; ++c) nu(c) = mesh.normal(t)[c];
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(nu).householderQ();
  const Eigen::MatrixXd tangents = q.rightCols(n);

  const auto cols = static_cast<Eigen::Index>(n + quadratic);
  Eigen::MatrixXd design(static_cast<Eigen::Index>(k), cols);
  Eigen::MatrixXd rhs(static_cast<Eigen::Index>(k), blades);
  const double scale = std::max(dist[order[k - 1]], 1e-300);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = order[r];
    Eigen::VectorXd d(dim);
    for (int c = 0; c < dim; ++c) d(c) = (mesh.node(i)[c] - mesh.node(t)[c]) / scale;
    const Eigen::VectorXd u = tangents.transpose() * d;
    const auto row = static_cast<Eigen::Index>(r);
    Eigen::Index col = 0;
    for (int a = 0; a < n; ++a) design(row, col++) = u(a);
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) design(row, col++) = u(a) * u(b);
    const Multivector diff = f[i] - f[t];
    for (Eigen::Index c = 0; c < blades; ++c) rhs(row, c) = diff[static_cast<unsigned>(c)];
  }
  const Eigen::MatrixXd fit = design.colPivHouseholderQr().solve(rhs) / scale;

  // Σ_j (τ_j - τ_0 e_j) c_j = ∂_τ f for each tangent τ.
  Eigen::MatrixXd system(n * blades, n * blades);
  Eigen::VectorXd target(n * blades);
  for (int m = 0; m < n; ++m) {
    for (int j = 1; j <= n; ++j) {
      Multivector a = Multivector::scalar(n, tangents(j, m));
      a[1u << (j - 1)] = -tangents(0, m);
      system.block(m * blades, (j - 1) * blades, blades, blades) = multiplication_matrix(a, side);
    }
    target.segment(m * blades, blades) = fit.row(m).transpose();
  }
  const Eigen::VectorXd c = system.partialPivLu().solve(target);
  std::vector<Multivector> out;
  for (int j = 0; j < n; ++j) {
    Multivector cj(n);
    for (Eigen::Index b = 0; b < blades; ++b) cj[static_cast<unsigned>(b)] = c(j * blades + b);
    out.push_back(cj);
  }
  return out;
}

// R(x) is linear in d = x - t: R = Σ_k d_k B_k with B_j = c_j and
// B_0 = -Σ_j e_j c_j (left) or -Σ_j c_j e_j (right).
std::vector<Multivector> regular_linear_basis(const std::vector<Multivector>& c, Side side) {
  const int n = static_cast<int>(c.size());
  std::vector<Multivector> basis(c.size() + 1, Multivector(n));
  for (int j = 1; j <= n; ++j) {
    const Multivector ej = Multivector::blade(n, 1u << (j - 1));
    basis[0] -= side == Side::left ? product(ej, c[j - 1]) : product(c[j - 1], ej);
    basis[static_cast<std::size_t>(j)] = c[j - 1];
  }
  return basis;
}

double mesh_scale(const SurfaceMesh& mesh) {
  if (mesh.spec()) return mesh.spec()->radius;
  const int dim = mesh.dim();
  std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
  for (std::size_t i = 0; i < mesh.size(); ++i)
    for (int k = 0; k < dim; ++k) centroid[static_cast<std::size_t>(k)] += mesh.node(i)[k];
  for (double& c : centroid) c /= static_cast<double>(mesh.size());
  double r = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) r = std::max(r, distance(mesh.node(i), centroid));
  return r;
}

void check_lambdas(std::span<const double> lambdas) {
  if (lambdas.size() < 2) throw InvalidInput("boundary limits need at least two λ values");
  for (std::size_t k = 0; k < lambdas.size(); ++k) {
    if (!(lambdas[k] > 0.0)) throw InvalidInput("λ values must be positive");
    if (k > 0 && !(lambdas[k] < lambdas[k - 1]))
      throw InvalidInput("λ sequence must be strictly decreasing");
  }
}

Point offset_point(std::span<const double> p, std::span<const double> dir, double s) {
  Point q;
  for (std::size_t k = 0; k < p.size(); ++k) q.push_back(p[k] + s * dir[k]);
  return q;
}

// Share of a node's cell left outside the cap. The cell is a flat disk
// (n = 2) or ball (n >= 3) of the node's area, cut by a plane at signed
// distance `offset` from its centre.
double outside_fraction(int n, double weight, double offset) {
  const double radius = n == 2 ? std::sqrt(weight / std::numbers::pi)
                               : std::cbrt(3.0 * weight / (4.0 * std::numbers::pi));
  const double u = offset / radius;
  if (u >= 1.0) return 1.0;
  if (u <= -1.0) return 0.0;
  if (n == 2) return 0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / std::numbers::pi;
  return 0.5 + (3.0 * u - u * u * u) / 4.0;
}

PrincipalValue delta_limit_pv(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t t,
                              Side side) {
  const auto x_t = mesh.node(t);
  std::vector<double> dist(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) dist[i] = distance(mesh.node(i), x_t);
  std::vector<double> sorted;
  sorted.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i)
    if (i != t) sorted.push_back(dist[i]);
  std::sort(sorted.begin(), sorted.end());
  // Symmetric node sets produce distances that agree up to rounding.
  const double merge = 1e-9 * mesh.h();
  sorted.erase(std::unique(sorted.begin(), sorted.end(),
                           [merge](double a, double b) { return b - a <= merge; }),
               sorted.end());
  if (sorted.size() < 8) throw DegenerateExclusion("too few nodes for a δ-limit principal value");

  // Many snapped radii between 2h and 24h; the truncated sums carry lattice
  // noise, so the limit comes from a least-squares polynomial in δ.
  const double cap = 0.25 * sorted.back();
  const double largest = std::min(24.0 * mesh.h(), cap);
  const double smallest = std::min(2.0 * mesh.h(), largest / 8.0);
  // Cut radii sit midway between consecutive node distances, so each
  // truncated sum matches the trapezoid rule over the remaining arc.
  std::vector<double> midpoints;
  for (std::size_t j = 0; j + 1 < sorted.size(); ++j) {
    const double mid = 0.5 * (sorted[j] + sorted[j + 1]);
    if (mid >= smallest && mid <= largest) midpoints.push_back(mid);
  }
  constexpr std::size_t kMaxRadii = 32;
  std::vector<double> deltas;
  if (midpoints.size() <= kMaxRadii) {
    deltas = midpoints;
  } else {
    const double ratio = std::log(midpoints.back() / midpoints.front());
    std::size_t last = midpoints.size();
    for (std::size_t r = 0; r < kMaxRadii; ++r) {
      const double target = midpoints.front() * std::exp(ratio * r / (kMaxRadii - 1));
      auto it = std::lower_bound(midpoints.begin(), midpoints.end(), target);
      if (it == midpoints.end()) it = std::prev(it);
      const auto idx = static_cast<std::size_t>(it - midpoints.begin());
      if (idx != last) deltas.push_back(midpoints[idx]);
      last = idx;
    }
  }
  if (deltas.size() < 6) throw DegenerateExclusion("too few cut radii for a δ-limit principal value");

  const double vol = unit_sphere_area(mesh.n());
  const auto blades = static_cast<Eigen::Index>(f[0].size());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(deltas.size()), blades);
  for (std::size_t r = 0; r < deltas.size(); ++r) {
    const double delta = deltas[r];
    const Multivector sum = pairwise_sum<Multivector>(
        mesh.size(),
        [&](std::size_t i) {
          const double keep = mesh.n() == 1 ? (dist[i] > delta ? 1.0 : 0.0)
                                            : outside_fraction(mesh.n(), mesh.weight(i), dist[i] - delta);
          if (keep == 0.0 || i == t) return Multivector(f.n());
          const Paravector e = kernel_E(mesh.node(i), x_t);
          return apply(kernel_measure(mesh, i, e, side), f[i], side) * keep;
        },
        Multivector(f.n()));
    for (Eigen::Index c = 0; c < blades; ++c)
      values(static_cast<Eigen::Index>(r), c) = sum[static_cast<unsigned>(c)] / vol;
  }
  auto intercept = [&](int degree) {
    Eigen::MatrixXd design(values.rows(), degree + 1);
    for (Eigen::Index r = 0; r < values.rows(); ++r)
      for (int p = 0; p <= degree; ++p)
        design(r, p) = std::pow(deltas[static_cast<std::size_t>(r)] / largest, p);
    const Eigen::MatrixXd coeffs = design.colPivHouseholderQr().solve(values);
    Multivector out(f.n());
    for (Eigen::Index c = 0; c < blades; ++c) out[static_cast<unsigned>(c)] = coeffs(0, c);
    return out;
  };
  const Multivector value = intercept(3);
  const double spread = (value - intercept(2)).norm();
  return {value, spread, !f.is_holder()};
}

}  // namespace

BoundaryDensity::BoundaryDensity(int n, std::vector<Multivector> samples, Regularity regularity,
                                 DensityFunction evaluator)
    : n_(AlgebraContext(n).n()),
      samples_(std::move(samples)),
      regularity_(regularity),
      evaluator_(std::move(evaluator)) {
  for (const auto& s : samples_)
    if (s.n() != n_) throw ContextMismatch("density sample from a different algebra");
  if (const auto* h = std::get_if<HolderTag>(&regularity_)) {
    if (!(h->mu > 0.0 && h->mu <= 1.0)) throw InvalidInput("Hölder index must lie in (0, 1]");
    if (h->constant < 0.0) throw InvalidInput("Hölder constant must be non-negative");
  }
}

BoundaryDensity BoundaryDensity::sample(const SurfaceMesh& mesh, DensityFunction f,
                                        Regularity regularity) {
  if (!f) throw InvalidInput("density evaluator is empty");
  std::vector<Multivector> samples;
  samples.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) samples.push_back(f(mesh.node(i)));
  return BoundaryDensity(mesh.n(), std::move(samples), regularity, std::move(f));
}

BoundaryDensity BoundaryDensity::constant(const SurfaceMesh& mesh, const Multivector& value) {
  if (value.n() != mesh.n()) throw ContextMismatch("constant density from a different algebra");
  return BoundaryDensity(mesh.n(), std::vector<Multivector>(mesh.size(), value), HolderTag{1.0, 0.0},
                         [value](std::span<const double>) { return value; });
}

double BoundaryDensity::max_norm() const {
  double m = 0.0;
  for (const auto& s : samples_) m = std::max(m, s.norm());
  return m;
}

double holder_quotient(const SurfaceMesh& mesh, const BoundaryDensity& f, double mu,
                       std::size_t pairs, std::uint64_t seed) {
  check_density(mesh, f);
  if (mesh.size() < 2) return 0.0;
  Rng rng(seed);
  double worst = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    const std::size_t i = rng.index(mesh.size());
    const std::size_t j = rng.index(mesh.size());
    if (i == j) continue;
    const double d = distance(mesh.node(i), mesh.node(j));
    if (d == 0.0) continue;
    worst = std::max(worst, (f[i] - f[j]).norm() / std::pow(d, mu));
  }
  return worst;
}

bool spot_check_holder(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t pairs,
                       std::uint64_t seed) {
  const auto* tag = std::get_if<HolderTag>(&f.regularity());
  if (!tag || tag->constant == 0.0) return true;
  return holder_quotient(mesh, f, tag->mu, pairs, seed) <= tag->constant * (1.0 + 1e-9);
}

SideTaggedPoint tag_point(const SurfaceMesh& mesh, std::span<const double> w) {
  check_point(mesh, w);
  SideTaggedPoint p{Point(w.begin(), w.end()), Region::interior};
  if (mesh.spec()) {
    p.side = mesh.spec()->classify(w, 1e-9 * mesh.spec()->radius);
    return p;
  }
  const double s = span_indicator(mesh, w).value;
  p.side = s == 1.0 ? Region::interior : (s == 0.0 ? Region::exterior : Region::boundary);
  return p;
}

Paravector kernel_E(std::span<const double> x, std::span<const double> w) {
  if (x.size() != w.size()) throw ContextMismatch("kernel points of different dimension");
  Point d;
  double r2 = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    d.push_back(x[k] - w[k]);
    r2 += d.back() * d.back();
  }
  if (r2 == 0.0) throw SingularInput("Cauchy kernel evaluated at coincident points");
  const int n = static_cast<int>(x.size()) - 1;
  const double r = std::sqrt(r2);
  double power = r2;
  for (int k = 2; k <= n; ++k) power *= r;
  const double scale = 1.0 / power;
  Paravector e(n);
  e[0] = d[0] * scale;
  for (int k = 1; k <= n; ++k) e[k] = -d[static_cast<std::size_t>(k)] * scale;
  return e;
}

double unit_sphere_area(int n) {
  if (n < 1) throw InvalidInput("unit_sphere_area needs n >= 1");
  const double m = n + 1.0;
  return 2.0 * std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0);
}

Point curve_tangent(const SurfaceMesh& mesh, std::size_t i) {
  if (mesh.n() != 1) throw InvalidInput("curve_tangent needs a closed curve");
  Point xu(2, 0.0);
  const Multivector d = curve_derivative(mesh, i, [&](std::size_t j) {
    return embed_point(mesh.node(j)).to_multivector();
  });
  xu[0] = d[0];
  xu[1] = d[1];
  return xu;
}

Multivector curve_derivative(const SurfaceMesh& mesh, std::size_t i,
                             const std::function<Multivector(std::size_t)>& value) {
  if (mesh.n() != 1) throw InvalidInput("curve_derivative needs a closed curve");
  const std::size_t count = mesh.size();
  const int radius = std::min<int>(4, static_cast<int>((count - 1) / 2));
  Multivector out(1);
  if (radius < 1) return out;
  const auto c = central_weights(radius);
  for (int k = 1; k <= radius; ++k) {
    const auto step = static_cast<std::size_t>(k);
    out.add_scaled(value((i + step) % count), c[k - 1]);
    out.add_scaled(value((i + count - step) % count), -c[k - 1]);
  }
  return out;
}

CauchyValue cauchy_integral(const SurfaceMesh& mesh, const BoundaryDensity& f,
                            std::span<const double> w, Side side) {
  check_density(mesh, f);
  check_point(mesh, w);
  Multivector sum = pairwise_sum<Multivector>(
      mesh.size(),
      [&](std::size_t i) {
        const Paravector e = kernel_E(mesh.node(i), w);
        return apply(kernel_measure(mesh, i, e, side), f[i], side);
      },
      Multivector(f.n()));
  CauchyValue out{sum / unit_sphere_area(mesh.n()), mesh.distance_to_nodes(w), false};
  out.near_boundary = out.distance < 3.0 * mesh.h();
  return out;
}

CauchyValue cauchy_integral(const SurfaceMesh& mesh, const BoundaryDensity& f,
                            const SideTaggedPoint& w, Side side) {
  if (w.side == Region::boundary)
    throw InvalidInput("cauchy_integral needs a point off the surface");
  return cauchy_integral(mesh, f, std::span<const double>(w.w.data(), w.w.size()), side);
}

PrincipalValue principal_value(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t t,
                               Side side, PvMethod method) {
  check_density(mesh, f);
  if (t >= mesh.size()) throw InvalidInput("principal value node index out of range");
  if (method == PvMethod::delta_limit) return delta_limit_pv(mesh, f, t, side);

  const auto x_t = mesh.node(t);
  const Multivector& f_t = f[t];
  std::vector<Multivector> linear;
  if (mesh.n() >= 2) {
    std::vector<double> dist(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) dist[i] = distance(mesh.node(i), x_t);
    linear = regular_linear_basis(matching_regular_linear(mesh, f, t, side, dist), side);
  }
  Multivector sum = pairwise_sum<Multivector>(
      mesh.size(),
      [&](std::size_t i) {
        if (i == t) return Multivector(f.n());
        const Paravector e = kernel_E(mesh.node(i), x_t);
        Multivector diff = f[i] - f_t;
        // The subtracted regular part has principal value zero at t.
        const auto x_i = mesh.node(i);
        for (std::size_t k = 0; k < linear.size(); ++k) diff.add_scaled(linear[k], x_t[k] - x_i[k]);
        return apply(kernel_measure(mesh, i, e, side), diff, side);
      },
      Multivector(f.n()));
  if (mesh.n() == 1) sum += curve_singular_term(mesh, f, t, side);
  sum /= unit_sphere_area(mesh.n());
  sum.add_scaled(f_t, 0.5);
  return {sum, 0.0, !f.is_holder()};
}

PrincipalValue principal_value(const SurfaceMesh& mesh, const BoundaryDensity& f,
                               std::span<const double> t, Side side, PvMethod method,
                               double snap_tol) {
  check_point(mesh, t);
  const std::size_t i = mesh.nearest_node(t);
  double norm_t = 0.0;
  for (double c : t) norm_t += c * c;
  if (distance(mesh.node(i), t) > snap_tol * (1.0 + std::sqrt(norm_t)))
    throw InvalidInput("principal value point is not a mesh node");
  return principal_value(mesh, f, i, side, method);
}

std::vector<Multivector> principal_values(const SurfaceMesh& mesh, const BoundaryDensity& f,
                                          Side side) {
  check_density(mesh, f);
  std::vector<Multivector> out(mesh.size(), Multivector(f.n()));
  parallel_for(mesh.size(), [&](std::size_t t) { out[t] = principal_value(mesh, f, t, side).value; });
  return out;
}

PlemeljValues plemelj_values(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t t,
                             Side side) {
  const Multivector pv = principal_value(mesh, f, t, side).value;
  PlemeljValues out{pv, pv};
  out.plus.add_scaled(f[t], 0.5);
  out.minus.add_scaled(f[t], -0.5);
  return out;
}

constexpr double kApproachClosest = 3.0;

std::vector<double> default_approach_lambdas(const SurfaceMesh& mesh) {
  // Closest approach stays a few h off the surface; when the cap bites the
  // sequence is compressed rather than pushed into the near-singular zone.
  const double last = kApproachClosest * mesh.h();
  const double first = std::max(std::min(8.0 * last, 0.5 * mesh_scale(mesh)), 2.0 * last);
  return geometric_sequence(first, std::pow(last / first, 0.25), 5);
}

Extrapolated<Multivector> normal_approach_limit(const SurfaceMesh& mesh, const BoundaryDensity& f,
                                                std::size_t t, Region from,
                                                std::span<const double> lambdas, Side side) {
  check_density(mesh, f);
  check_lambdas(lambdas);
  if (from == Region::boundary) throw InvalidInput("approach side must be interior or exterior");
  const double sign = from == Region::interior ? -1.0 : 1.0;
  std::vector<Multivector> values;
  for (double lambda : lambdas) {
    const Point w = offset_point(mesh.node(t), mesh.normal(t), sign * lambda);
    values.push_back(cauchy_integral(mesh, f, as_span(w), side).value);
  }
  return extrapolate_to_zero(lambdas, std::span<const Multivector>(values));
}

Extrapolated<Multivector> symmetric_difference_limit(const SurfaceMesh& mesh,
                                                     const BoundaryDensity& f, std::size_t p,
                                                     std::span<const double> lambdas, Side side) {
  check_density(mesh, f);
  check_lambdas(lambdas);
  if (p >= mesh.size()) throw InvalidInput("boundary node index out of range");
  std::vector<Multivector> values;
  for (double lambda : lambdas) {
    // M = -ν points into Ω⁺.
    const Point inside = offset_point(mesh.node(p), mesh.normal(p), -lambda);
    const Point outside = offset_point(mesh.node(p), mesh.normal(p), lambda);
    values.push_back(cauchy_integral(mesh, f, as_span(inside), side).value -
                     cauchy_integral(mesh, f, as_span(outside), side).value);
  }
  return extrapolate_to_zero(lambdas, std::span<const Multivector>(values));
}

SpanValue span_indicator(const SurfaceMesh& mesh, std::span<const double> w) {
  check_point(mesh, w);
  const auto one = BoundaryDensity::constant(mesh, Multivector::scalar(mesh.n(), 1.0));
  SpanValue out{0.0, Multivector(mesh.n())};
  const std::size_t nearest = mesh.nearest_node(w);
  if (distance(mesh.node(nearest), w) <= 1e-9 * (1.0 + mesh_scale(mesh))) {
    out.raw = principal_value(mesh, one, nearest).value;
  } else {
    out.raw = cauchy_integral(mesh, one, w).value;
  }
  double best = 0.0;
  double best_gap = 0.0;
  for (double candidate : {0.0, 0.5, 1.0}) {
    const double gap = (out.raw - Multivector::scalar(mesh.n(), candidate)).norm();
    if (candidate == 0.0 || gap < best_gap) {
      best = candidate;
      best_gap = gap;
    }
  }
  if (best_gap > 0.25)
    throw InconclusiveClassification("span value " + std::to_string(out.raw.scalar_part()) +
                                     " is not near 0, 1/2 or 1");
  out.value = best;
  return out;
}

Multivector cauchy_derivative(const SurfaceMesh& mesh, const BoundaryDensity& f,
                              std::span<const double> w, const MultiIndex& alpha, Side side) {
  check_density(mesh, f);
  check_point(mesh, w);
  if (alpha.n() != mesh.n()) throw ContextMismatch("multi-index from a different algebra");
  if (alpha.degree() > 4) throw InvalidInput("cauchy_derivative supports |α| <= 4");
  const KernelDerivative& dk = kernel_derivative(alpha);
  Multivector sum = pairwise_sum<Multivector>(
      mesh.size(),
      [&](std::size_t i) {
        Point d;
        for (std::size_t k = 0; k < w.size(); ++k) d.push_back(mesh.node(i)[k] - w[k]);
        return apply(kernel_measure(mesh, i, dk(as_span(d)), side), f[i], side);
      },
      Multivector(f.n()));
  const double sign = (alpha.degree() % 2) ? -1.0 : 1.0;
  return sum * (sign / unit_sphere_area(mesh.n()));
}

}  // namespace cliffbvp
