#include "cliffbvp/bvp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include <Eigen/Dense>

#include "cliffbvp/error.hpp"
#include "cliffbvp/numerics.hpp"

namespace cliffbvp {
namespace {

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

struct Frame {
  Point center;
  double radius = 1.0;
};

Frame frame_of(const SurfaceMesh& mesh) {
  if (mesh.spec()) return {mesh.spec()->center, mesh.spec()->radius};
  Frame fr;
  fr.center.assign(static_cast<std::size_t>(mesh.dim()), 0.0);
  for (std::size_t i = 0; i < mesh.size(); ++i)
    for (int k = 0; k < mesh.dim(); ++k) fr.center[static_cast<std::size_t>(k)] += mesh.node(i)[k];
  for (double& c : fr.center) c /= static_cast<double>(mesh.size());
  fr.radius = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i)
    fr.radius = std::max(fr.radius, distance(mesh.node(i), as_span(fr.center)));
  return fr;
}

std::vector<std::size_t> spread_nodes(std::size_t total, std::size_t wanted) {
  std::vector<std::size_t> out;
  wanted = std::min(wanted, total);
  for (std::size_t s = 0; s < wanted; ++s) out.push_back(s * total / wanted);
  return out;
}

std::vector<HyperPolynomial::Term> polynomial_slots(int n, int m,
                                                    std::vector<HyperPolynomial::Term> supplied) {
  std::vector<HyperPolynomial::Term> slots;
  if (m >= 0)
    for (const auto& alpha : multi_indices_up_to(n, m)) slots.push_back({alpha, Multivector(n)});
  for (auto& term : supplied) {
    auto it = std::find_if(slots.begin(), slots.end(),
                           [&](const HyperPolynomial::Term& s) { return s.alpha == term.alpha; });
    if (it == slots.end())
      throw InvalidInput("free coefficient " + term.alpha.to_string() +
                         " exceeds the polynomial degree allowed by m");
    if (term.coeff.n() != n) throw ContextMismatch("free coefficient from a different algebra");
    it->coeff = term.coeff;
  }
  return slots;
}

// Moment conditions for m < -n: |α| <= -n-1-m.
void check_moments(const SurfaceMesh& mesh, const BoundaryDensity& g, int m, Side side,
                   SolvabilityReport& report) {
  const int n = mesh.n();
  report.required_conditions = static_cast<int>(binomial(-m - 1, n));
  const int top = -n - 1 - m;
  const MomentTable table = moment_table(mesh, g, top, side);
  const double scale = g.max_norm() * mesh.total_weight();
  const double rho = mesh.max_node_radius();
  bool all_vanish = true;
  for (const auto& [alpha, value] : table.values) {
    const double residual = value.norm();
    const double threshold = std::max(10.0 * table.error_estimates.at(alpha),
                                      1e-8 * scale * std::pow(rho, alpha.degree()));
    report.residuals[alpha] = residual;
    report.thresholds[alpha] = threshold;
    if (residual > threshold) all_vanish = false;
  }
  report.verdict = all_vanish ? Verdict::solvable : Verdict::unsolvable;
}

// Φ = [S[g] + P] on Ω⁺ and [S[g] + P] · right on Ω⁻.
SectionalSolution build_solution(const SurfaceMesh& mesh, const BoundaryDensity& g, int order,
                                 Side side, std::vector<HyperPolynomial::Term> slots,
                                 std::optional<Multivector> right) {
  auto shared_mesh = std::make_shared<const SurfaceMesh>(mesh);
  auto shared_g = std::make_shared<const BoundaryDensity>(g);
  auto poly = std::make_shared<HyperPolynomial>(mesh.n(), side);
  for (const auto& t : slots) poly->add_term(t.alpha, t.coeff);

  SectionalSolution s;
  s.order_bound = order;
  s.polynomial = std::move(slots);
  s.side = side;
  s.interior = [shared_mesh, shared_g, poly, side](std::span<const double> w) {
    Multivector v = cauchy_integral(*shared_mesh, *shared_g, w, side).value;
    v += (*poly)(w);
    return v;
  };
  s.exterior = [shared_mesh, shared_g, poly, side, right](std::span<const double> w) {
    Multivector v = cauchy_integral(*shared_mesh, *shared_g, w, side).value;
    v += (*poly)(w);
    return right ? product(v, *right) : v;
  };
  s.boundary = [shared_mesh, shared_g, poly, side, right](std::size_t t) {
    PlemeljValues pv = plemelj_values(*shared_mesh, *shared_g, t, side);
    const Multivector p = (*poly)(shared_mesh->node(t));
    pv.plus += p;
    pv.minus += p;
    if (right) pv.minus = product(pv.minus, *right);
    return pv;
  };
  return s;
}

Multivector inverse_at(const BoundaryDensity& d, std::size_t i, const char* what) {
  try {
    return multivector_inverse(d[i]);
  } catch (const SingularInput&) {
    throw InvalidInput(std::string(what) + " is not invertible at node " + std::to_string(i));
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::solvable: return "solvable";
    case Verdict::unsolvable: return "unsolvable";
    case Verdict::unconditional: return "unconditional";
  }
  return "unknown";
}

Multivector multivector_inverse(const Multivector& a) {
  const auto dim = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd left(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Multivector image = product(a, Multivector::blade(a.n(), static_cast<unsigned>(col)));
    for (Eigen::Index row = 0; row < dim; ++row) left(row, col) = image[static_cast<unsigned>(row)];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(left);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) throw SingularInput("multivector is not invertible");
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(dim);
  unit(0) = 1.0;
  const Eigen::VectorXd x = lu.solve(unit);
  Multivector inv(a.n());
  for (Eigen::Index k = 0; k < dim; ++k) inv[static_cast<unsigned>(k)] = x(k);
  const Multivector one = Multivector::scalar(a.n(), 1.0);
  const double tol = 1e-10 * std::max(1.0, a.norm() * inv.norm());
  if ((product(a, inv) - one).norm() > tol || (product(inv, a) - one).norm() > tol)
    throw SingularInput("multivector has no two-sided inverse");
  return inv;
}

BvpResult solve_jump_rm(const SurfaceMesh& mesh, const BoundaryDensity& g, int m, Side side,
                        std::vector<HyperPolynomial::Term> free_coefficients) {
  if (g.n() != mesh.n() || g.size() != mesh.size())
    throw ContextMismatch("density is not aligned with the mesh");
  const int n = mesh.n();
  BvpResult result;
  if (m >= 0) {
    result.report.freedom = static_cast<int>(binomial(n + m, m));
  } else if (m < -n) {
    check_moments(mesh, g, m, side, result.report);
    if (result.report.verdict == Verdict::unsolvable) return result;
  }
  result.solution = build_solution(mesh, g, m >= 0 ? m : std::min(m, -n), side,
                                   polynomial_slots(n, m, std::move(free_coefficients)),
                                   std::nullopt);
  return result;
}

BvpResult solve_constant_gap(const SurfaceMesh& mesh, const BoundaryDensity& g,
                             const Multivector& G, int m,
                             std::vector<HyperPolynomial::Term> free_coefficients) {
  if (g.n() != mesh.n() || g.size() != mesh.size() || G.n() != mesh.n())
    throw ContextMismatch("density, gap and mesh must share one algebra");
  Multivector inv(mesh.n());
  try {
    inv = multivector_inverse(G);
  } catch (const SingularInput&) {
    throw InvalidInput("constant gap G is not invertible");
  }
  const int n = mesh.n();
  BvpResult result;
  if (m >= 0) {
    result.report.freedom = static_cast<int>(binomial(n + m, m));
  } else if (m < -n) {
    check_moments(mesh, g, m, Side::left, result.report);
    if (result.report.verdict == Verdict::unsolvable) return result;
  }
  result.solution = build_solution(mesh, g, m >= 0 ? m : std::min(m, -n), Side::left,
                                   polynomial_slots(n, m, std::move(free_coefficients)), inv);
  return result;
}

double gap_boundary_residual(const SurfaceMesh& mesh, const BoundaryDensity& g,
                             const SectionalSolution& solution, const Multivector& G) {
  std::vector<double> residual(mesh.size(), 0.0);
  parallel_for(mesh.size(), [&](std::size_t t) {
    const PlemeljValues pv = solution.boundary(t);
    residual[t] = (pv.plus - product(pv.minus, G) - g[t]).norm();
  });
  return *std::max_element(residual.begin(), residual.end());
}

DirichletResult solve_dirichlet(const SurfaceMesh& mesh, const BoundaryDensity& g,
                                DirichletMode mode, const DirichletOptions& options) {
  if (g.n() != mesh.n() || g.size() != mesh.size())
    throw ContextMismatch("density is not aligned with the mesh");
  if (mode == DirichletMode::holder && !g.is_holder())
    throw InvalidInput("holder mode needs a Hölder-tagged density");
  DirichletResult out;
  const double scale = std::max(g.max_norm(), 1e-300);
  const Frame fr = frame_of(mesh);

  Rng rng(options.seed);
  for (int p = 0; p < options.exterior_probes; ++p) {
    Point u;
    double norm = 0.0;
    do {
      u = random_point(mesh.n(), rng, -1.0, 1.0);
      norm = 0.0;
      for (double c : u) norm += c * c;
      norm = std::sqrt(norm);
    } while (norm < 0.1);
    Point w;
    for (std::size_t k = 0; k < u.size(); ++k)
      w.push_back(fr.center[k] + options.probe_radius * fr.radius * u[k] / norm);
    out.exterior_residual = std::max(
        out.exterior_residual, cauchy_integral(mesh, g, as_span(w)).value.norm() / scale);
  }
  out.exterior_pass = out.exterior_residual <= options.tolerance;

  if (mode == DirichletMode::holder) {
    const auto nodes = spread_nodes(mesh.size(), 8 * options.boundary_samples);
    std::vector<double> residual(nodes.size(), 0.0);
    parallel_for(nodes.size(), [&](std::size_t s) {
      const std::size_t t = nodes[s];
      Multivector diff = principal_value(mesh, g, t).value;
      diff.add_scaled(g[t], -0.5);
      residual[s] = diff.norm() / scale;
    });
    out.pv_residual = *std::max_element(residual.begin(), residual.end());
    out.pv_pass = *out.pv_residual <= options.tolerance;
    out.solvable = *out.pv_pass;
  } else {
    out.solvable = out.exterior_pass;
  }

  const auto lambdas = default_approach_lambdas(mesh);
  for (std::size_t t : spread_nodes(mesh.size(), options.boundary_samples)) {
    const auto limit = symmetric_difference_limit(mesh, g, t, lambdas);
    out.boundary_residual = std::max(out.boundary_residual, (limit.value - g[t]).norm() / scale);
  }
  if (out.solvable) out.solution = build_solution(mesh, g, -mesh.n(), Side::left, {}, std::nullopt);
  return out;
}

CharacteristicCoefficients make_characteristic(const BoundaryDensity& a, const BoundaryDensity& b,
                                               double quotient_tol) {
  if (a.n() != b.n() || a.size() != b.size())
    throw ContextMismatch("coefficients a and b are not aligned");
  if (a.size() == 0) throw InvalidInput("coefficients are empty");
  std::vector<Multivector> sums, diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sums.push_back(a[i] + b[i]);
    diffs.push_back(a[i] - b[i]);
  }
  const BoundaryDensity s(a.n(), sums), d(a.n(), diffs);
  Multivector G = product(d[0], inverse_at(s, 0, "a + b"));
  double spread = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    inverse_at(d, i, "a - b");
    const Multivector q = product(d[i], inverse_at(s, i, "a + b"));
    spread = std::max(spread, (q - G).norm());
  }
  if (spread > quotient_tol * std::max(1.0, G.norm()))
    throw InvalidInput("(a - b)/(a + b) is not constant: spread " + std::to_string(spread));
  return {a, b, G};
}

BoundaryDensity solve_characteristic_sie(const SurfaceMesh& mesh,
                                         const CharacteristicCoefficients& coeffs,
                                         const BoundaryDensity& f) {
  if (f.size() != mesh.size() || coeffs.a.size() != mesh.size())
    throw InvalidInput("SIE data is not aligned with the mesh");
  std::vector<Multivector> inner, head;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Multivector inv_s = multivector_inverse(coeffs.a[i] + coeffs.b[i]);
    const Multivector inv_d = multivector_inverse(coeffs.a[i] - coeffs.b[i]);
    inner.push_back(product(product(product(f[i], inv_d), coeffs.b[i]), inv_s));
    head.push_back(product(f[i], inv_s + inv_d) * 0.5);
  }
  const BoundaryDensity h(mesh.n(), std::move(inner), f.regularity());
  const auto pv = principal_values(mesh, h);
  std::vector<Multivector> phi;
  for (std::size_t i = 0; i < mesh.size(); ++i) phi.push_back(head[i] - pv[i] * 2.0);
  return BoundaryDensity(mesh.n(), std::move(phi), f.regularity());
}

std::vector<Multivector> characteristic_residual(const SurfaceMesh& mesh,
                                                 const CharacteristicCoefficients& coeffs,
                                                 const BoundaryDensity& phi,
                                                 const BoundaryDensity& f) {
  const auto pv = principal_values(mesh, phi);
  std::vector<Multivector> out;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    Multivector r = product(phi[i], coeffs.a[i]);
    r += product(pv[i], coeffs.b[i]) * 2.0;
    r -= f[i];
    out.push_back(r);
  }
  return out;
}

BoundaryDensity invert_cauchy_pv(const SurfaceMesh& mesh, const BoundaryDensity& f) {
  auto pv = principal_values(mesh, f);
  for (auto& v : pv) v *= 2.0;
  return BoundaryDensity(mesh.n(), std::move(pv), f.regularity());
}

std::vector<Multivector> apply_full_sie_lhs(const SurfaceMesh& mesh, const BoundaryDensity& a,
                                            const PairKernel& k, const BoundaryDensity& phi) {
  if (a.size() != mesh.size() || phi.size() != mesh.size())
    throw InvalidInput("SIE data is not aligned with the mesh");
  std::vector<Multivector> out(mesh.size(), Multivector(mesh.n()));
  parallel_for(mesh.size(), [&](std::size_t t) {
    Multivector lhs = product(phi[t], a[t]);
    if (k) {
      std::vector<Multivector> psi;
      psi.reserve(mesh.size());
      for (std::size_t i = 0; i < mesh.size(); ++i)
        psi.push_back(product(phi[i], k(mesh.node(i), mesh.node(t))));
      const BoundaryDensity density(mesh.n(), std::move(psi), phi.regularity());
      lhs += principal_value(mesh, density, t).value * 2.0;
    }
    out[t] = lhs;
  });
  return out;
}

PoincareBertrandReport poincare_bertrand_discrepancy(const SurfaceMesh& mesh,
                                                     const BoundaryDensity& f,
                                                     const PairKernel& k, std::size_t samples) {
  if (f.size() != mesh.size()) throw InvalidInput("density is not aligned with the mesh");
  const int n = mesh.n();
  const double vol = unit_sphere_area(n);
  const std::size_t count = mesh.size();
  const Frame fr = frame_of(mesh);
  const auto nodes = spread_nodes(count, samples);

  auto E = [&](std::size_t x, std::size_t w) {
    return kernel_E(mesh.node(x), mesh.node(w)).to_multivector();
  };
  // On a closed curve the desingularized integrands below stay bounded at
  // x = t and x = τ; their limits come from derivatives along the curve.
  const bool curve = n == 1;
  std::vector<Multivector> tangent, tangent_kernel;
  if (curve) {
    const std::array<double, 2> origin{0.0, 0.0};
    for (std::size_t i = 0; i < count; ++i) {
      const Point xu = curve_tangent(mesh, i);
      tangent.push_back(embed_point(as_span(xu)).to_multivector());
      tangent_kernel.push_back(kernel_E(as_span(xu), origin).to_multivector());
    }
  }

  // ∫ E(x - t) dσ E(τ - x) with both singular factors desingularized.
  auto orthogonality = [&](std::size_t t, std::size_t tau) {
    const Multivector anchor = E(tau, t);
    Multivector sum = pairwise_sum<Multivector>(
        count,
        [&](std::size_t x) {
          if (x == t || x == tau) return Multivector(n);
          const Multivector left = product(E(x, t) - anchor, oriented_measure(mesh, x));
          return product(left, E(tau, x) - anchor);
        },
        Multivector(n));
    if (curve) {
      const Multivector b_u = product(product(anchor, tangent[t]), anchor);
      sum += product(product(tangent_kernel[t], oriented_measure(mesh, t)), b_u);
      const Multivector a_u = product(product(anchor, tangent[tau]), anchor);
      sum += product(product(a_u, oriented_measure(mesh, tau)), tangent_kernel[tau]);
    }
    return sum;
  };

  PoincareBertrandReport report;
  const BoundaryDensity once(n, principal_values(mesh, f), f.regularity());
  for (std::size_t t : nodes) {
    std::vector<Multivector> inner(count, Multivector(n));
    parallel_for(count, [&](std::size_t tau) {
      if (tau != t) inner[tau] = orthogonality(t, tau);
    });
    Multivector rhs = f[t] * (0.25 * vol * vol);
    rhs += pairwise_sum<Multivector>(
        count,
        [&](std::size_t tau) {
          if (tau == t) return Multivector(n);
          return product(product(inner[tau], oriented_measure(mesh, tau)), f[tau]);
        },
        Multivector(n));
    for (std::size_t tau = 0; tau < count; ++tau)
      if (tau != t && distance(mesh.node(tau), mesh.node(t)) >= 0.25 * fr.radius)
        report.orthogonality_max = std::max(report.orthogonality_max, inner[tau].norm());
    const Multivector lhs = principal_value(mesh, once, t).value * (vol * vol);
    const double gap = (lhs - rhs).norm();
    report.special_case.push_back({t, lhs, rhs, gap});
    report.special_case_max = std::max(report.special_case_max, gap);
  }

  if (!k) return report;

  // inner(x) = ∫ E(τ - x) dσ_τ k(τ, x) = ∨ · PV C[k(·, x)](x).
  std::vector<Multivector> inner(count, Multivector(n));
  parallel_for(count, [&](std::size_t x) {
    std::vector<Multivector> column;
    column.reserve(count);
    for (std::size_t tau = 0; tau < count; ++tau)
      column.push_back(k(mesh.node(tau), mesh.node(x)));
    inner[x] = principal_value(mesh, BoundaryDensity(n, std::move(column)), x).value * vol;
  });
  const BoundaryDensity inner_density(n, inner);
  for (std::size_t t : nodes) {
    Multivector lhs = principal_value(mesh, inner_density, t).value * vol;
    lhs -= k(mesh.node(t), mesh.node(t)) * (0.25 * vol * vol);

    std::vector<Multivector> per_tau(count, Multivector(n));
    parallel_for(count, [&](std::size_t tau) {
      if (tau == t) return;
      // K(x) = ν(τ) k(τ, x); H(x) = E(τ - x)(K(x) - K(τ)).
      const Multivector nu_tau = mesh.normal_paravector(tau).to_multivector();
      auto K = [&](std::size_t x) { return product(nu_tau, k(mesh.node(tau), mesh.node(x))); };
      const Multivector k_tau = K(tau);
      Multivector h_tau(n);
      if (curve) h_tau = product(tangent_kernel[tau], curve_derivative(mesh, tau, K)) * -1.0;
      auto H = [&](std::size_t x) {
        if (x == tau) return h_tau;
        return product(E(tau, x), K(x) - k_tau);
      };
      const Multivector h_t = H(t);
      Multivector j = pairwise_sum<Multivector>(
          count,
          [&](std::size_t x) {
            if (x == t) return Multivector(n);
            return product(product(E(x, t), oriented_measure(mesh, x)), H(x) - h_t);
          },
          Multivector(n));
      if (curve)
        j += product(product(tangent_kernel[t], oriented_measure(mesh, t)),
                     curve_derivative(mesh, t, H));
      j += h_t * (0.5 * vol);
      j += product(orthogonality(t, tau), k_tau);
      per_tau[tau] = j * mesh.weight(tau);
    });
    if (curve && count > 8) {
      // The τ = t entry is bounded; fill it by interpolation from τ = t ± 1..4.
      for (int j = 1; j <= 4; ++j) {
        double weight = 1.0;
        for (int i = -4; i <= 4; ++i)
          if (i != 0 && i != j) weight *= static_cast<double>(i) / static_cast<double>(i - j);
        const auto step = static_cast<std::size_t>(j);
        per_tau[t] += (per_tau[(t + step) % count] + per_tau[(t + count - step) % count]) * weight;
      }
    }
    const Multivector rhs = pairwise_sum<Multivector>(
        count, [&](std::size_t tau) { return per_tau[tau]; }, Multivector(n));
    const double gap = (lhs - rhs).norm();
    report.general.push_back({t, lhs, rhs, gap});
    report.general_max = std::max(report.general_max, gap);
  }
  return report;
}

}  // namespace cliffbvp
