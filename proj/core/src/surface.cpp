#include "cliffbvp/surface.hpp"

#include <algorithm>
#include <boost/math/special_functions/legendre.hpp>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "cliffbvp/error.hpp"
#include "cliffbvp/numerics.hpp"

namespace cliffbvp {
namespace {

constexpr double kPi = std::numbers::pi;

int kind_dimension(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::circle:
      return 1;
    case SurfaceKind::sphere2:
      return 2;
    case SurfaceKind::sphere3:
      return 3;
  }
  throw InvalidInput("unknown surface kind");
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

struct MeshArrays {
  std::vector<double> nodes, normals, weights;

  void push(const DomainSpec& spec, std::span<const double> unit, double weight) {
    for (std::size_t k = 0; k < unit.size(); ++k) {
      nodes.push_back(spec.center[k] + spec.radius * unit[k]);
      normals.push_back(unit[k]);
    }
    weights.push_back(weight);
  }
};

void build_circle(const DomainSpec& spec, std::size_t count, MeshArrays& out) {
  const double w = 2.0 * kPi * spec.radius / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(count);
    const double unit[2] = {std::cos(theta), std::sin(theta)};
    out.push(spec, unit, w);
  }
}

// Spherical Fibonacci lattice with equal weights.
void build_fibonacci(const DomainSpec& spec, std::size_t count, MeshArrays& out) {
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  const double w = 4.0 * kPi * spec.radius * spec.radius / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    const double unit[3] = {r * std::cos(phi), r * std::sin(phi), z};
    out.push(spec, unit, w);
  }
}

struct GaussRule {
  std::vector<double> nodes, weights;
};

GaussRule gauss_legendre(int m) {
  GaussRule rule;
  for (double x : boost::math::legendre_p_zeros<double>(m)) {
    const double dp = boost::math::legendre_p_prime(m, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    if (x != 0.0) {
      rule.nodes.push_back(-x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

// S^3 via hyperspherical angles (chi, theta, phi): Gauss-Chebyshev (second
// kind) in cos(chi), Gauss-Legendre in cos(theta), uniform in phi.
void build_sphere3(const DomainSpec& spec, int m, MeshArrays& out) {
  const GaussRule theta_rule = gauss_legendre(m);
  const int nphi = 2 * m;
  const double r3 = spec.radius * spec.radius * spec.radius;
  for (int k = 1; k <= m; ++k) {
    const double angle = kPi * k / (m + 1);
    const double t = std::cos(angle);
    const double s = std::sin(angle);
    // Chebyshev-U weight: integrates sqrt(1-t^2) g(t) dt = sin^2(chi) g d(chi).
    const double wchi = kPi / (m + 1) * s * s;
    for (std::size_t j = 0; j < theta_rule.nodes.size(); ++j) {
      const double u = theta_rule.nodes[j];
      const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
      for (int p = 0; p < nphi; ++p) {
        const double phi = 2.0 * kPi * p / nphi;
        const double unit[4] = {t, s * u, s * su * std::cos(phi), s * su * std::sin(phi)};
        const double w = r3 * wchi * theta_rule.weights[j] * (2.0 * kPi / nphi);
        out.push(spec, unit, w);
      }
    }
  }
}

}  // namespace

// --- DomainSpec -------------------------------------------------------------

DomainSpec DomainSpec::unit(SurfaceKind kind) {
  DomainSpec spec;
  spec.kind = kind;
  spec.center.assign(static_cast<std::size_t>(kind_dimension(kind)) + 1, 0.0);
  spec.radius = 1.0;
  return spec;
}

int DomainSpec::n() const noexcept { return kind_dimension(kind); }

void DomainSpec::validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("radius must be positive");
  if (static_cast<int>(center.size()) != n() + 1)
    throw InvalidInput("center has " + std::to_string(center.size()) + " coordinates, surface " +
                       to_string(kind) + " needs " + std::to_string(n() + 1));
}

Region DomainSpec::classify(std::span<const double> w, double boundary_tol) const {
  const double r = distance(w, std::span<const double>(center.data(), center.size()));
  if (std::abs(r - radius) <= boundary_tol * radius) return Region::boundary;
  return r < radius ? Region::interior : Region::exterior;
}

double DomainSpec::area() const {
  const int n = this->n();
  const double unit = 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
  return unit * std::pow(radius, n);
}

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::circle:
      return "circle";
    case SurfaceKind::sphere2:
      return "sphere2";
    case SurfaceKind::sphere3:
      return "sphere3";
  }
  return "?";
}

SurfaceKind parse_surface_kind(const std::string& name) {
  if (name == "circle") return SurfaceKind::circle;
  if (name == "sphere2" || name == "sphere") return SurfaceKind::sphere2;
  if (name == "sphere3") return SurfaceKind::sphere3;
  throw InvalidInput("unsupported surface kind '" + name + "' (circle, sphere2, sphere3)");
}

// --- SurfaceMesh ------------------------------------------------------------

SurfaceMesh::SurfaceMesh(int n, std::vector<double> nodes, std::vector<double> normals,
                         std::vector<double> weights, int level, std::optional<DomainSpec> spec)
    : n_(n),
      nodes_(std::move(nodes)),
      normals_(std::move(normals)),
      weights_(std::move(weights)),
      level_(level),
      spec_(std::move(spec)) {
  AlgebraContext{n};
  const auto d = static_cast<std::size_t>(dim());
  if (nodes_.size() != weights_.size() * d || normals_.size() != weights_.size() * d)
    throw InvalidInput("mesh arrays have inconsistent lengths");
  if (weights_.empty()) throw InvalidInput("mesh has no nodes");
  for (double w : weights_)
    if (!(w > 0.0)) throw InvalidInput("mesh weights must be positive");
  h_ = weights_.size() > 1 ? max_nearest_neighbor_distance(nodes_, dim()) : 0.0;
}

Point SurfaceMesh::node_point(std::size_t i) const {
  const auto x = node(i);
  return Point(x.begin(), x.end());
}

Paravector SurfaceMesh::normal_paravector(std::size_t i) const {
  const auto v = normal(i);
  return Paravector(Point(v.begin(), v.end()));
}

double SurfaceMesh::total_weight() const {
  return pairwise_sum<double>(weights_.size(), [&](std::size_t i) { return weights_[i]; }, 0.0);
}

double SurfaceMesh::max_node_radius() const {
  double r = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    double s = 0.0;
    for (double c : node(i)) s += c * c;
    r = std::max(r, std::sqrt(s));
  }
  return r;
}

double SurfaceMesh::distance_to_nodes(std::span<const double> w) const {
  return distance(node(nearest_node(w)), w);
}

std::size_t SurfaceMesh::nearest_node(std::span<const double> w) const {
  if (static_cast<int>(w.size()) != dim()) throw InvalidInput("point dimension mismatch");
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = distance(node(i), w);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// --- operations ---------------------------------------------------------------

std::size_t mesh_node_count(SurfaceKind kind, int level) {
  if (level < 0) throw InvalidInput("mesh level must be non-negative");
  if (level > 20) throw InvalidInput("mesh level too large");
  const auto L = static_cast<std::size_t>(level);
  switch (kind) {
    case SurfaceKind::circle:
      return std::size_t{16} << L;
    case SurfaceKind::sphere2:
      return std::size_t{20} << (2 * L);
    case SurfaceKind::sphere3: {
      const std::size_t m = std::size_t{4} << L;
      return 2 * m * m * m;
    }
  }
  throw InvalidInput("unknown surface kind");
}

SurfaceMesh build_mesh(const DomainSpec& spec, int level) {
  spec.validate();
  const std::size_t count = mesh_node_count(spec.kind, level);
  MeshArrays arrays;
  switch (spec.kind) {
    case SurfaceKind::circle:
      build_circle(spec, count, arrays);
      break;
    case SurfaceKind::sphere2:
      build_fibonacci(spec, count, arrays);
      break;
    case SurfaceKind::sphere3:
      build_sphere3(spec, 4 << level, arrays);
      break;
  }
  return SurfaceMesh(spec.n(), std::move(arrays.nodes), std::move(arrays.normals),
                     std::move(arrays.weights), level, spec);
}

Multivector oriented_measure(const SurfaceMesh& mesh, std::size_t i) {
  if (i >= mesh.size()) throw InvalidInput("node index out of range");
  return (mesh.normal_paravector(i) * mesh.weight(i)).to_multivector();
}

std::vector<std::size_t> nodes_outside_cap(const SurfaceMesh& mesh, const CapExclusion& cap) {
  if (static_cast<int>(cap.center.size()) != mesh.dim())
    throw InvalidInput("cap center dimension mismatch");
  if (!(cap.radius > 0.0)) throw InvalidInput("cap radius must be positive");
  const double scale = std::max(1.0, mesh.max_node_radius());
  const std::span<const double> t(cap.center.data(), cap.center.size());
  const bool on_spec_surface =
      mesh.spec() && mesh.spec()->classify(t, 1e-9) == Region::boundary;
  if (!on_spec_surface && mesh.distance_to_nodes(t) > 1e-9 * scale)
    throw InvalidInput("cap center does not lie on the surface");
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < mesh.size(); ++i)
    if (distance(mesh.node(i), t) > cap.radius) kept.push_back(i);
  if (kept.empty())
    throw DegenerateExclusion("cap of radius " + std::to_string(cap.radius) +
                              " removes every node");
  return kept;
}

SurfaceMesh exclude_cap(const SurfaceMesh& mesh, const CapExclusion& cap) {
  const auto kept = nodes_outside_cap(mesh, cap);
  const auto d = static_cast<std::size_t>(mesh.dim());
  std::vector<double> nodes, normals, weights;
  nodes.reserve(kept.size() * d);
  normals.reserve(kept.size() * d);
  weights.reserve(kept.size());
  for (std::size_t i : kept) {
    const auto x = mesh.node(i);
    const auto v = mesh.normal(i);
    nodes.insert(nodes.end(), x.begin(), x.end());
    normals.insert(normals.end(), v.begin(), v.end());
    weights.push_back(mesh.weight(i));
  }
  return SurfaceMesh(mesh.n(), std::move(nodes), std::move(normals), std::move(weights),
                     mesh.level(), std::nullopt);
}

SurfaceMesh refine(const SurfaceMesh& mesh) {
  if (!mesh.spec()) throw InvalidInput("refine needs a mesh produced by build_mesh");
  return build_mesh(*mesh.spec(), mesh.level() + 1);
}

double max_nearest_neighbor_distance(std::span<const double> points, int dim) {
  const auto d = static_cast<std::size_t>(dim);
  const std::size_t count = points.size() / d;
  if (count < 2) return 0.0;
  // Sweep along coordinate 0: a candidate closer than the current best must
  // lie within that distance in x_0.
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points[a * d] < points[b * d]; });
  auto pt = [&](std::size_t i) { return points.subspan(i * d, d); };
  double worst = 0.0;
  for (std::size_t pos = 0; pos < count; ++pos) {
    const std::size_t i = order[pos];
    const double xi = points[i * d];
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t q = pos + 1; q < count; ++q) {
      const std::size_t j = order[q];
      if (points[j * d] - xi >= best) break;
      best = std::min(best, distance(pt(i), pt(j)));
    }
    for (std::size_t q = pos; q-- > 0;) {
      const std::size_t j = order[q];
      if (xi - points[j * d] >= best) break;
      best = std::min(best, distance(pt(i), pt(j)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

void write_mesh(std::ostream& os, const SurfaceMesh& mesh) {
  const auto old_precision = os.precision(17);
  os << "n " << mesh.n() << " nodes " << mesh.size() << '\n';
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (double c : mesh.node(i)) os << c << ' ';
    for (double c : mesh.normal(i)) os << c << ' ';
    os << mesh.weight(i) << '\n';
  }
  os.precision(old_precision);
}

SurfaceMesh read_mesh(std::istream& is) {
  std::string tag_n, tag_nodes;
  int n = 0;
  long long count = 0;
  if (!(is >> tag_n >> n >> tag_nodes >> count) || tag_n != "n" || tag_nodes != "nodes")
    throw InvalidInput("mesh header must read `n <int> nodes <int>`");
  AlgebraContext{n};
  if (count <= 0) throw InvalidInput("mesh node count must be positive");
  const auto d = static_cast<std::size_t>(n + 1);
  std::vector<double> nodes, normals, weights;
  nodes.reserve(static_cast<std::size_t>(count) * d);
  normals.reserve(static_cast<std::size_t>(count) * d);
  for (long long i = 0; i < count; ++i) {
    double value = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (!(is >> value)) throw InvalidInput("truncated mesh record " + std::to_string(i));
      nodes.push_back(value);
    }
    double len2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (!(is >> value)) throw InvalidInput("truncated mesh record " + std::to_string(i));
      normals.push_back(value);
      len2 += value * value;
    }
    if (std::abs(std::sqrt(len2) - 1.0) > 1e-6)
      throw InvalidInput("normal of node " + std::to_string(i) + " is not a unit vector");
    if (!(is >> value)) throw InvalidInput("truncated mesh record " + std::to_string(i));
    if (!(value > 0.0))
      throw InvalidInput("weight of node " + std::to_string(i) + " must be positive");
    weights.push_back(value);
  }
  return SurfaceMesh(n, std::move(nodes), std::move(normals), std::move(weights));
}

}  // namespace cliffbvp
