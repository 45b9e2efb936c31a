#pragma once

// Quadrature discretizations of closed oriented hypersurfaces in R^{n+1}.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cliffbvp/clifford.hpp"

namespace cliffbvp {

enum class SurfaceKind {
  circle,   ///< S^1 in R^2 (n = 1)
  sphere2,  ///< S^2 in R^3 (n = 2)
  sphere3,  ///< S^3 in R^4 (n = 3)
};

/// Which side of the surface a point lies on.
enum class Region { interior, boundary, exterior };

struct DomainSpec {
  SurfaceKind kind = SurfaceKind::circle;
  Point center;
  double radius = 1.0;

  /// Unit sphere/circle at the origin.
  static DomainSpec unit(SurfaceKind kind);

  int n() const noexcept;
  void validate() const;
  Region classify(std::span<const double> w, double boundary_tol = 1e-12) const;
  /// Closed-form surface area of the sphere of this radius.
  double area() const;
};

std::string to_string(SurfaceKind kind);
SurfaceKind parse_surface_kind(const std::string& name);

/// Nodes, outward unit normals and positive area weights. Curves (n = 1)
/// store their nodes in traversal order, which the principal-value
/// quadrature relies on.
class SurfaceMesh {
 public:
  SurfaceMesh(int n, std::vector<double> nodes, std::vector<double> normals,
              std::vector<double> weights, int level = 0,
              std::optional<DomainSpec> spec = std::nullopt);

  int n() const noexcept { return n_; }
  int dim() const noexcept { return n_ + 1; }
  std::size_t size() const noexcept { return weights_.size(); }
  int level() const noexcept { return level_; }
  /// Largest nearest-neighbour distance between nodes.
  double h() const noexcept { return h_; }
  const std::optional<DomainSpec>& spec() const noexcept { return spec_; }

  std::span<const double> node(std::size_t i) const {
    return {nodes_.data() + i * static_cast<std::size_t>(dim()), static_cast<std::size_t>(dim())};
  }
  std::span<const double> normal(std::size_t i) const {
    return {normals_.data() + i * static_cast<std::size_t>(dim()),
            static_cast<std::size_t>(dim())};
  }
  double weight(std::size_t i) const { return weights_[i]; }

  Point node_point(std::size_t i) const;
  Paravector normal_paravector(std::size_t i) const;

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> normals() const noexcept { return normals_; }
  std::span<const double> weights() const noexcept { return weights_; }

  double total_weight() const;
  /// max |x_i| over nodes (radius of the smallest origin-centred ball holding Γ).
  double max_node_radius() const;
  /// Distance from w to the closest node.
  double distance_to_nodes(std::span<const double> w) const;
  std::size_t nearest_node(std::span<const double> w) const;

 private:
  int n_;
  std::vector<double> nodes_;
  std::vector<double> normals_;
  std::vector<double> weights_;
  int level_;
  std::optional<DomainSpec> spec_;
  double h_ = 0.0;
};

struct CapExclusion {
  Point center;
  double radius = 0.0;
};

SurfaceMesh build_mesh(const DomainSpec& spec, int level);
/// Node count produced by build_mesh for this kind and level.
std::size_t mesh_node_count(SurfaceKind kind, int level);

/// ν_i w_i as a paravector-valued multivector (the discrete dσ at node i).
Multivector oriented_measure(const SurfaceMesh& mesh, std::size_t i);

/// Indices of nodes farther than cap.radius from cap.center.
std::vector<std::size_t> nodes_outside_cap(const SurfaceMesh& mesh, const CapExclusion& cap);

/// Sub-mesh with the cap Γ(t, δ) removed; weights are left unchanged.
SurfaceMesh exclude_cap(const SurfaceMesh& mesh, const CapExclusion& cap);

/// The next level of a builder-generated mesh.
SurfaceMesh refine(const SurfaceMesh& mesh);

/// Largest nearest-neighbour distance of a point set stored row-major.
double max_nearest_neighbor_distance(std::span<const double> points, int dim);

/// Text format: header `n <int> nodes <int>`, then per node n+1 coordinates,
/// n+1 normal components and the weight.
void write_mesh(std::ostream& os, const SurfaceMesh& mesh);
SurfaceMesh read_mesh(std::istream& is);

}  // namespace cliffbvp
