#pragma once

// Jump and constant-gap Riemann problems, Dirichlet problems, the
// characteristic singular integral equation and the Poincaré-Bertrand
// experiment, all built on Cauchy-type integrals over a SurfaceMesh.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cliffbvp/cauchy.hpp"
#include "cliffbvp/fueter.hpp"

namespace cliffbvp {

/// Φ with Φ|Ω⁺ = interior, Φ|Ω⁻ = exterior; `boundary(t)` gives (Φ⁺(t), Φ⁻(t))
/// at node t from the Plemelj formulas.
struct SectionalSolution {
  Evaluator interior;
  Evaluator exterior;
  std::function<PlemeljValues(std::size_t)> boundary;
  int order_bound = 0;
  /// Free hyperpolynomial slots c_α of P_m; zero unless supplied.
  std::vector<HyperPolynomial::Term> polynomial;
  Side side = Side::left;
};

enum class Verdict { solvable, unsolvable, unconditional };
std::string to_string(Verdict v);

struct SolvabilityReport {
  /// C(-m-1, n) for m < -n, else 0.
  int required_conditions = 0;
  /// C(n+m, m) for m >= 0, else 0.
  int freedom = 0;
  std::map<MultiIndex, double> residuals;
  std::map<MultiIndex, double> thresholds;
  Verdict verdict = Verdict::unconditional;
};

struct BvpResult {
  std::optional<SectionalSolution> solution;
  SolvabilityReport report;
};

/// Threshold rule: |moment| <= max(10 · refinement error, 1e-8 · scale · ρ^|α|).
BvpResult solve_jump_rm(const SurfaceMesh& mesh, const BoundaryDensity& g, int m,
                        Side side = Side::left,
                        std::vector<HyperPolynomial::Term> free_coefficients = {});

/// Φ = [S[g] + P_m] X with X = 1 on Ω⁺ and G⁻¹ on Ω⁻ (left problems only).
BvpResult solve_constant_gap(const SurfaceMesh& mesh, const BoundaryDensity& g,
                             const Multivector& G, int m,
                             std::vector<HyperPolynomial::Term> free_coefficients = {});

/// max_t |Φ⁺(t) - Φ⁻(t) G - g(t)| over all nodes, with Φ± from solution.boundary.
double gap_boundary_residual(const SurfaceMesh& mesh, const BoundaryDensity& g,
                             const SectionalSolution& solution, const Multivector& G);

/// General inverse via the left-multiplication matrix; throws SingularInput
/// when a is not invertible.
Multivector multivector_inverse(const Multivector& a);

enum class DirichletMode { holder, continuous };

struct DirichletOptions {
  double tolerance = 1e-2;       ///< relative residual separating pass from fail
  int exterior_probes = 16;
  double probe_radius = 1.5;     ///< in units of the surface radius
  std::size_t boundary_samples = 8;
  std::uint64_t seed = 11;
};

struct DirichletResult {
  bool solvable = false;
  /// max |C[g](w)| over exterior probes, relative to max |g|.
  double exterior_residual = 0.0;
  bool exterior_pass = false;
  /// max_t |PV C[g](t) - g(t)/2|, relative; holder mode only.
  std::optional<double> pv_residual;
  std::optional<bool> pv_pass;
  /// max |symmetric difference - g| at sample nodes, relative.
  double boundary_residual = 0.0;
  std::optional<SectionalSolution> solution;
};

DirichletResult solve_dirichlet(const SurfaceMesh& mesh, const BoundaryDensity& g,
                                DirichletMode mode = DirichletMode::holder,
                                const DirichletOptions& options = {});

struct CharacteristicCoefficients {
  BoundaryDensity a;
  BoundaryDensity b;
  Multivector G;  ///< (a - b)(a + b)^{-1}, constant over the nodes
};

/// Validates invertibility of a ± b and constancy of the right quotient.
CharacteristicCoefficients make_characteristic(const BoundaryDensity& a, const BoundaryDensity& b,
                                               double quotient_tol = 1e-10);

/// φ(t) = (f/2)[(a+b)^{-1} + (a-b)^{-1}] - 2 PV C[f (a-b)^{-1} b (a+b)^{-1}](t).
BoundaryDensity solve_characteristic_sie(const SurfaceMesh& mesh,
                                         const CharacteristicCoefficients& coeffs,
                                         const BoundaryDensity& f);

/// φ(t) a(t) + 2 PV C[φ](t) b(t) - f(t) at every node.
std::vector<Multivector> characteristic_residual(const SurfaceMesh& mesh,
                                                 const CharacteristicCoefficients& coeffs,
                                                 const BoundaryDensity& phi,
                                                 const BoundaryDensity& f);

/// S_op[f] = 2 PV C[f].
BoundaryDensity invert_cauchy_pv(const SurfaceMesh& mesh, const BoundaryDensity& f);

/// k(x, t) evaluated at two surface points.
using PairKernel = std::function<Multivector(std::span<const double>, std::span<const double>)>;

/// φ(t) a(t) + (2/∨) PV ∫ E(x - t) dσ φ(x) k(x, t) at every node.
std::vector<Multivector> apply_full_sie_lhs(const SurfaceMesh& mesh, const BoundaryDensity& a,
                                            const PairKernel& k, const BoundaryDensity& phi);

struct PoincareBertrandRow {
  std::size_t node = 0;
  Multivector lhs;
  Multivector rhs;
  double discrepancy = 0.0;
};

struct PoincareBertrandReport {
  /// Poincare-Bertrand identity with k(τ, x) = f(τ).
  std::vector<PoincareBertrandRow> special_case;
  double special_case_max = 0.0;
  /// max |∫ E(x - t) dσ E(τ - x)| over sampled τ ≠ t.
  double orthogonality_max = 0.0;
  /// The identity for the general kernel; empty when none was supplied.
  std::vector<PoincareBertrandRow> general;
  double general_max = 0.0;
};

/// Evaluates both sides of the special case for f, and of the general
/// identity for k when given, at `samples` evenly spaced nodes.
PoincareBertrandReport poincare_bertrand_discrepancy(const SurfaceMesh& mesh,
                                                     const BoundaryDensity& f,
                                                     const PairKernel& k = {},
                                                     std::size_t samples = 4);

}  // namespace cliffbvp
