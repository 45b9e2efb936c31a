#pragma once

// Cauchy kernel, Cauchy-type integrals off the surface, principal values and
// Plemelj boundary values on it, and boundary limits by normal approach.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "cliffbvp/clifford.hpp"
#include "cliffbvp/multi_index.hpp"
#include "cliffbvp/numerics.hpp"
#include "cliffbvp/surface.hpp"

namespace cliffbvp {

enum class Side { left, right };

struct HolderTag {
  double mu = 1.0;
  double constant = 0.0;  ///< M in |f(x) - f(y)| <= M |x - y|^mu; 0 = unknown
};
struct ContinuousTag {};
using Regularity = std::variant<HolderTag, ContinuousTag>;

using DensityFunction = std::function<Multivector(std::span<const double>)>;

/// Boundary data sampled at mesh nodes, optionally with the exact function.
class BoundaryDensity {
 public:
  BoundaryDensity(int n, std::vector<Multivector> samples, Regularity regularity = HolderTag{},
                  DensityFunction evaluator = {});

  /// samples[i] = f(node_i).
  static BoundaryDensity sample(const SurfaceMesh& mesh, DensityFunction f,
                                Regularity regularity = HolderTag{});
  static BoundaryDensity constant(const SurfaceMesh& mesh, const Multivector& value);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return samples_.size(); }
  const Multivector& operator[](std::size_t i) const { return samples_[i]; }
  const std::vector<Multivector>& samples() const noexcept { return samples_; }
  const Regularity& regularity() const noexcept { return regularity_; }
  bool is_holder() const noexcept { return std::holds_alternative<HolderTag>(regularity_); }
  const DensityFunction& evaluator() const noexcept { return evaluator_; }
  bool has_evaluator() const noexcept { return static_cast<bool>(evaluator_); }

  double max_norm() const;

 private:
  int n_;
  std::vector<Multivector> samples_;
  Regularity regularity_;
  DensityFunction evaluator_;
};

/// Largest |f(x_i) - f(x_j)| / |x_i - x_j|^mu over `pairs` random node pairs.
double holder_quotient(const SurfaceMesh& mesh, const BoundaryDensity& f, double mu,
                       std::size_t pairs, std::uint64_t seed = 1);
/// True unless the density carries a Hölder constant M that a spot check exceeds.
bool spot_check_holder(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t pairs = 256,
                       std::uint64_t seed = 1);

struct SideTaggedPoint {
  Point w;
  Region side = Region::interior;
};

/// Tags w using the mesh's domain spec, or the span indicator when absent.
SideTaggedPoint tag_point(const SurfaceMesh& mesh, std::span<const double> w);

/// E(x - w) = bar(X - W) / |x - w|^{n+1}.
Paravector kernel_E(std::span<const double> x, std::span<const double> w);
/// ∨_{n+1}, the area of the unit sphere in R^{n+1}.
double unit_sphere_area(int n);

/// Closed curves only: derivative with respect to the node index at node i,
/// by a periodic central difference of radius up to 4.
Point curve_tangent(const SurfaceMesh& mesh, std::size_t i);
Multivector curve_derivative(const SurfaceMesh& mesh, std::size_t i,
                             const std::function<Multivector(std::size_t)>& value);

struct CauchyValue {
  Multivector value;
  double distance = 0.0;        ///< distance from w to the nearest node
  bool near_boundary = false;   ///< distance < 3h: quadrature unreliable
};

/// (1/∨) Σ E(x_i - w) ν_i w_i f_i (left) or Σ f_i ν_i w_i E(x_i - w) (right).
CauchyValue cauchy_integral(const SurfaceMesh& mesh, const BoundaryDensity& f,
                            std::span<const double> w, Side side = Side::left);
CauchyValue cauchy_integral(const SurfaceMesh& mesh, const BoundaryDensity& f,
                            const SideTaggedPoint& w, Side side = Side::left);

enum class PvMethod { regularized, delta_limit };

struct PrincipalValue {
  Multivector value;
  double error_estimate = 0.0;  ///< extrapolation estimate (delta_limit only)
  bool continuous_only = false; ///< density was not Hölder-tagged
};

/// Cauchy principal value at node t.
PrincipalValue principal_value(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t t,
                               Side side = Side::left, PvMethod method = PvMethod::regularized);
/// Snaps t to a node; a miss of more than snap_tol * (1 + |t|) is an error.
PrincipalValue principal_value(const SurfaceMesh& mesh, const BoundaryDensity& f,
                               std::span<const double> t, Side side = Side::left,
                               PvMethod method = PvMethod::regularized, double snap_tol = 1e-9);

/// Regularized principal value at every node.
std::vector<Multivector> principal_values(const SurfaceMesh& mesh, const BoundaryDensity& f,
                                          Side side = Side::left);

struct PlemeljValues {
  Multivector plus;
  Multivector minus;
};

PlemeljValues plemelj_values(const SurfaceMesh& mesh, const BoundaryDensity& f, std::size_t t,
                             Side side = Side::left);

/// Five λ from min(24h, 0.5 · scale) down to 3h, geometrically spaced.
std::vector<double> default_approach_lambdas(const SurfaceMesh& mesh);

/// Limit of the Cauchy-type integral as w → node t along the normal from the
/// chosen side, by Neville extrapolation over the decreasing λ sequence.
Extrapolated<Multivector> normal_approach_limit(const SurfaceMesh& mesh, const BoundaryDensity& f,
                                                std::size_t t, Region from,
                                                std::span<const double> lambdas,
                                                Side side = Side::left);

/// lim S[f](p + λM) - S[f](p - λM) with M the inner unit normal.
Extrapolated<Multivector> symmetric_difference_limit(const SurfaceMesh& mesh,
                                                     const BoundaryDensity& f, std::size_t p,
                                                     std::span<const double> lambdas,
                                                     Side side = Side::left);

struct SpanValue {
  double value = 0.0;  ///< one of 0, 0.5, 1
  Multivector raw;
};

/// C[1](w) rounded to {0, 1/2, 1}; boundary when w coincides with a node.
SpanValue span_indicator(const SurfaceMesh& mesh, std::span<const double> w);

/// ∂^α C[f](w), differentiating the kernel under the integral sign.
Multivector cauchy_derivative(const SurfaceMesh& mesh, const BoundaryDensity& f,
                              std::span<const double> w, const MultiIndex& alpha,
                              Side side = Side::left);

}  // namespace cliffbvp
