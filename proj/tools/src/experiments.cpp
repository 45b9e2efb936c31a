#include "cliffbvp_tools/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include "cliffbvp/bvp.hpp"
#include "cliffbvp/error.hpp"
#include "cliffbvp/fueter.hpp"
#include "cliffbvp_tools/densities.hpp"

namespace cliffbvp::tools {

Criterion at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, "<=", threshold, value <= threshold};
}
Criterion at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, ">=", threshold, value >= threshold};
}
Criterion equal_to(std::string name, double value, double expected) {
  return {std::move(name), value, "==", expected, value == expected};
}

bool ExperimentResult::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const Criterion& c) { return c.pass; });
}

namespace {

using Clock = std::chrono::steady_clock;

struct Errors {
  double max = 0.0;
  double sum_sq = 0.0;
  std::size_t count = 0;

  void add(double e) {
    // NaN must never look like a pass.
    if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
    max = std::max(max, e);
    sum_sq += e * e;
    ++count;
  }
  double l2() const { return count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0; }
};

DomainSpec domain_of(const ExperimentConfig& c) {
  DomainSpec d;
  d.kind = c.surface;
  d.center = c.center;
  d.radius = c.radius;
  d.validate();
  return d;
}

Side side_of(const ExperimentConfig& c) { return c.side == "right" ? Side::right : Side::left; }

double tolerance(const ExperimentConfig& c, double circle, double other) {
  if (c.tolerance) return *c.tolerance;
  return c.surface == SurfaceKind::circle ? circle : other;
}

void require_surface(const ExperimentConfig& c, SurfaceKind kind) {
  if (c.surface != kind)
    throw ConfigError("surface", "experiment '" + c.experiment + "' needs surface " + to_string(kind));
}

std::vector<std::size_t> probe_nodes(std::size_t total, std::size_t wanted) {
  wanted = std::min(wanted, total);
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < wanted; ++k) out.push_back(k * total / wanted);
  return out;
}

// Unit vectors in R^dim, uniform on the sphere by rejection from the cube.
std::vector<Point> directions(int dim, std::size_t count, Rng& rng) {
  std::vector<Point> out;
  while (out.size() < count) {
    Point v;
    double r2 = 0.0;
    for (int k = 0; k < dim; ++k) {
      v.push_back(rng.uniform(-1.0, 1.0));
      r2 += v.back() * v.back();
    }
    if (r2 < 1e-4 || r2 > 1.0) continue;
    for (double& x : v) x /= std::sqrt(r2);
    out.push_back(v);
  }
  return out;
}

Point along(const Point& center, const Point& dir, double r) {
  Point p;
  for (std::size_t k = 0; k < center.size(); ++k) p.push_back(center[k] + r * dir[k]);
  return p;
}

std::vector<std::string> corpus_specs(const ExperimentConfig& c) {
  if (!c.density.empty()) return split_specs(c.density);
  return random_corpus(c.corpus, c.seed);
}

Point default_pole(const ExperimentConfig& c) {
  if (c.pole) return *c.pole;
  Point offset;
  const std::array<double, 4> pattern{0.12, -0.07, 0.05, 0.09};
  for (std::size_t k = 0; k < c.center.size(); ++k)
    offset.push_back(c.center[k] + c.radius * pattern[k % pattern.size()]);
  return offset;
}

std::string point_text(const Point& p) {
  std::string out;
  for (std::size_t k = 0; k < p.size(); ++k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", p[k]);
    if (k) out += ',';
    out += buf;
  }
  return out;
}

// Runs body once per level, collecting one table row per level.
using LevelBody = std::function<void(const SurfaceMesh&, Errors&, nlohmann::json&)>;

void sweep(const ExperimentConfig& c, ExperimentResult& r, const LevelBody& body) {
  const DomainSpec d = domain_of(c);
  for (int level : c.levels) {
    const auto start = Clock::now();
    const SurfaceMesh mesh = build_mesh(d, level);
    Errors e;
    nlohmann::json extra = nlohmann::json::object();
    body(mesh, e, extra);
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.rows.push_back({level, mesh.h(), mesh.size(), e.max, e.l2(), c.timing ? ms : 0.0});
    if (!extra.empty()) r.details["levels"][std::to_string(level)] = extra;
  }
}

void add_order_criterion(const ExperimentConfig& c, ExperimentResult& r, double noise_floor) {
  std::vector<double> h, err;
  for (const auto& row : r.rows) {
    h.push_back(row.h);
    err.push_back(row.error_maxnorm);
  }
  if (h.size() < 2) {
    r.criteria.push_back(at_least("levels", static_cast<double>(h.size()), 2));
    return;
  }
  const OrderFit fit = fit_order(h, err, noise_floor);
  r.fit = fit;
  const double order = fit.points_used >= 2 ? fit.order : std::numeric_limits<double>::quiet_NaN();
  r.criteria.push_back(at_least("fitted_order", order, c.min_order));
}

// Number of steps where the error failed to decrease.
void add_monotone_criterion(ExperimentResult& r, std::size_t min_levels) {
  r.criteria.push_back(at_least("levels", static_cast<double>(r.rows.size()),
                                static_cast<double>(min_levels)));
  int violations = 0;
  for (std::size_t k = 1; k < r.rows.size(); ++k)
    if (!(r.rows[k].error_maxnorm < r.rows[k - 1].error_maxnorm)) ++violations;
  r.criteria.push_back(equal_to("non_decreasing_steps", violations, 0));
}

double final_error(const ExperimentResult& r) {
  return r.rows.empty() ? std::numeric_limits<double>::infinity() : r.rows.back().error_maxnorm;
}

double relative_scale(const BoundaryDensity& f) {
  const double s = f.max_norm();
  return s > 0.0 ? s : 1.0;
}

// --- experiments ----------------------------------------------------------

ExperimentResult pv_constant(const ExperimentConfig& c) {
  ExperimentResult r;
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    const auto one = BoundaryDensity::constant(mesh, Multivector::scalar(mesh.n(), 1.0));
    double estimate = 0.0;
    for (std::size_t t : probe_nodes(mesh.size(), c.probes)) {
      const auto pv = principal_value(mesh, one, t, side_of(c), PvMethod::delta_limit);
      e.add((pv.value - Multivector::scalar(mesh.n(), 0.5)).norm());
      estimate = std::max(estimate, pv.error_estimate);
    }
    extra["max_error_estimate"] = estimate;
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-6, 1e-3)));
  if (c.levels.size() >= 2) add_order_criterion(c, r, 1e-13);
  return r;
}

ExperimentResult span(const ExperimentConfig& c) {
  ExperimentResult r;
  Rng rng(c.seed);
  const auto dirs = directions(c.center.size() > 0 ? static_cast<int>(c.center.size()) : 2, c.probes, rng);
  int mismatches = 0;
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    auto check = [&](std::span<const double> w, double expected) {
      try {
        const SpanValue s = span_indicator(mesh, w);
        e.add((s.raw - Multivector::scalar(mesh.n(), expected)).norm());
        if (s.value != expected) ++mismatches;
      } catch (const InconclusiveClassification&) {
        e.add(std::numeric_limits<double>::infinity());
        ++mismatches;
      }
    };
    for (const auto& dir : dirs) check(as_span(along(c.center, dir, 0.5 * c.radius)), 1.0);
    for (std::size_t t : probe_nodes(mesh.size(), c.probes)) check(mesh.node(t), 0.5);
    for (const auto& dir : dirs) check(as_span(along(c.center, dir, 1.5 * c.radius)), 0.0);
    extra["probes"] = 3 * dirs.size();
  });
  r.criteria.push_back(at_most("max_raw_deviation", final_error(r), c.tolerance.value_or(0.05)));
  r.criteria.push_back(equal_to("misclassified", mismatches, 0));
  return r;
}

ExperimentResult reproduction(const ExperimentConfig& c) {
  ExperimentResult r;
  const int n = DomainSpec::unit(c.surface).n();
  Rng rng(c.seed);
  const std::size_t half = std::max<std::size_t>(1, c.probes / 2);
  const auto dirs = directions(n + 1, half, rng);
  const std::array<double, 3> inner{0.0, 0.35, 0.7};
  const std::array<double, 3> outer{1.3, 1.6, 2.0};
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    double worst_inside = 0.0, worst_outside = 0.0;
    for (const auto& alpha : multi_indices_up_to(n, 3)) {
      const auto g = BoundaryDensity::sample(
          mesh, [&](std::span<const double> x) { return symmetric_power(alpha, x); });
      const double scale = relative_scale(g);
      for (std::size_t k = 0; k < dirs.size(); ++k) {
        const Point w_in = along(c.center, dirs[k], inner[k % 3] * c.radius);
        const Multivector expected = symmetric_power(alpha, as_span(w_in));
        const double ein =
            (cauchy_integral(mesh, g, as_span(w_in), side_of(c)).value - expected).norm() / scale;
        const Point w_out = along(c.center, dirs[k], outer[k % 3] * c.radius);
        const double eout = cauchy_integral(mesh, g, as_span(w_out), side_of(c)).value.norm() / scale;
        e.add(ein);
        e.add(eout);
        worst_inside = std::max(worst_inside, ein);
        worst_outside = std::max(worst_outside, eout);
      }
    }
    extra["reproduction_max"] = worst_inside;
    extra["annihilation_max"] = worst_outside;
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-3, 1e-3)));
  add_monotone_criterion(r, 3);
  return r;
}

ExperimentResult plemelj(const ExperimentConfig& c) {
  ExperimentResult r;
  const auto specs = corpus_specs(c);
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    const auto lambdas = default_approach_lambdas(mesh);
    double plus_max = 0.0, minus_max = 0.0;
    for (const auto& spec : specs) {
      const auto f = make_density(mesh, spec);
      const double scale = relative_scale(f);
      for (std::size_t t : probe_nodes(mesh.size(), c.probes)) {
        const PlemeljValues expected = plemelj_values(mesh, f, t, side_of(c));
        const auto plus = normal_approach_limit(mesh, f, t, Region::interior, lambdas, side_of(c));
        const auto minus = normal_approach_limit(mesh, f, t, Region::exterior, lambdas, side_of(c));
        const double ep = (plus.value - expected.plus).norm() / scale;
        const double em = (minus.value - expected.minus).norm() / scale;
        e.add(std::max(ep, em));
        plus_max = std::max(plus_max, ep);
        minus_max = std::max(minus_max, em);
      }
    }
    extra["interior_max"] = plus_max;
    extra["exterior_max"] = minus_max;
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-4, 1e-2)));
  return r;
}

ExperimentResult inversion(const ExperimentConfig& c) {
  ExperimentResult r;
  const auto specs = corpus_specs(c);
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json&) {
    for (const auto& spec : specs) {
      const auto f = make_density(mesh, spec);
      const auto twice = invert_cauchy_pv(mesh, invert_cauchy_pv(mesh, f));
      const double scale = relative_scale(f);
      double worst = 0.0;
      for (std::size_t i = 0; i < mesh.size(); ++i)
        worst = std::max(worst, (twice[i] - f[i]).norm() / scale);
      e.add(worst);
    }
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-3, 1e-2)));
  add_order_criterion(c, r, 1e-11);
  return r;
}

ExperimentResult jump(const ExperimentConfig& c) {
  ExperimentResult r;
  const int n = DomainSpec::unit(c.surface).n();
  const Point pole = default_pole(c);
  const DomainSpec d = domain_of(c);
  if (d.classify(as_span(pole)) != Region::interior) throw ConfigError("pole", "must lie inside the surface");
  const int m = c.m.value_or(-n);
  Rng rng(c.seed);
  const auto dirs = directions(n + 1, std::max<std::size_t>(1, c.probes / 2), rng);
  const std::string spec = "kernel:" + point_text(pole);
  int bad_unsolvable = 0;
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    const auto E = density_function(n, spec);
    const auto g = BoundaryDensity::sample(mesh, [&](std::span<const double> x) { return -E(x); });
    const BvpResult result = solve_jump_rm(mesh, g, m, side_of(c));
    extra["verdict"] = to_string(result.report.verdict);
    extra["required_conditions"] = result.report.required_conditions;
    if (!result.solution) {
      e.add(std::numeric_limits<double>::infinity());
    } else {
      const double scale = relative_scale(g);
      for (const auto& dir : dirs) {
        const Point in = along(pole, dir, 0.3 * c.radius);
        e.add(result.solution->interior(as_span(in)).norm() / scale);
        const Point out = along(c.center, dir, 1.6 * c.radius);
        const Multivector expected = E(as_span(out));
        e.add((result.solution->exterior(as_span(out)) - expected).norm() / expected.norm());
      }
    }
    // The same data with one order less must be rejected.
    const BvpResult stricter = solve_jump_rm(mesh, g, std::min(m, -n) - 1, side_of(c));
    extra["stricter_verdict"] = to_string(stricter.report.verdict);
    extra["stricter_conditions"] = stricter.report.required_conditions;
    if (stricter.report.verdict != Verdict::unsolvable) ++bad_unsolvable;
    if (m == -n && stricter.report.required_conditions != 1) ++bad_unsolvable;
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-3, 1e-3)));
  r.criteria.push_back(equal_to("stricter_order_not_rejected", bad_unsolvable, 0));
  return r;
}

ExperimentResult gap(const ExperimentConfig& c) {
  ExperimentResult r;
  const int n = DomainSpec::unit(c.surface).n();
  if (c.gap.size() > (std::size_t{1} << n)) throw ConfigError("gap", "more coefficients than blades");
  Multivector G(n);
  for (std::size_t k = 0; k < c.gap.size(); ++k) G[static_cast<unsigned>(k)] = c.gap[k];
  const auto specs = corpus_specs(c);
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    std::vector<std::string> verdicts;
    for (const auto& spec : specs) {
      const auto g = make_density(mesh, spec);
      const BvpResult result = solve_constant_gap(mesh, g, G, c.m.value_or(0));
      verdicts.push_back(to_string(result.report.verdict));
      if (!result.solution) {
        e.add(std::numeric_limits<double>::infinity());
        continue;
      }
      e.add(gap_boundary_residual(mesh, g, *result.solution, G) / relative_scale(g));
    }
    extra["verdicts"] = verdicts;
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-4, 1e-2)));
  return r;
}

ExperimentResult dirichlet(const ExperimentConfig& c) {
  ExperimentResult r;
  const int n = DomainSpec::unit(c.surface).n();
  const Point inside = default_pole(c);
  std::vector<std::pair<std::string, bool>> cases;
  for (const auto& alpha : multi_indices_up_to(n, 2)) {
    if (cases.size() == 6) break;
    std::string spec = "zpow:";
    for (int j = 0; j < n; ++j) spec += (j ? "," : "") + std::to_string(alpha[j]);
    cases.emplace_back(spec, true);
  }
  Rng rng(c.seed);
  const auto dirs = directions(n + 1, 8, rng);
  const std::array<double, 4> far{1.5, 2.0, 2.5, 3.0};
  for (std::size_t k = 0; cases.size() < 10; ++k)
    cases.emplace_back("kernel:" + point_text(along(c.center, dirs[k], far[k % 4] * c.radius)), true);
  // Exterior-regular data: the interior Cauchy integral vanishes instead.
  for (std::size_t k = 4; k < 7; ++k)
    cases.emplace_back("kernel:" + point_text(along(inside, dirs[k], 0.2 * c.radius)), false);
  std::string first_order = "kernel:" + point_text(inside) + "@1";
  for (int j = 1; j < n; ++j) first_order += ",0";
  cases.emplace_back(first_order, false);
  cases.emplace_back("sum:coord:1+kernel:" + point_text(inside), false);

  int agree = 0, expected = 0;
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    agree = 0;
    expected = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& [spec, solvable] : cases) {
      const auto g = make_density(mesh, spec);
      const DirichletResult d = solve_dirichlet(mesh, g);
      const bool pv = d.pv_pass.value_or(false);
      if (d.exterior_pass == pv) ++agree;
      if (d.solvable == solvable) ++expected;
      if (solvable) e.add(d.boundary_residual);
      rows.push_back({{"density", spec},
                      {"exterior_residual", d.exterior_residual},
                      {"pv_residual", d.pv_residual.value_or(-1.0)},
                      {"boundary_residual", d.boundary_residual},
                      {"solvable", d.solvable}});
    }
    extra["cases"] = rows;
  });
  const double total = static_cast<double>(cases.size());
  r.criteria.push_back(equal_to("criteria_agree", agree, total));
  r.criteria.push_back(equal_to("expected_verdicts", expected, total));
  r.criteria.push_back(at_most("boundary_residual", final_error(r), tolerance(c, 1e-2, 1e-2)));
  return r;
}

ExperimentResult classical(const ExperimentConfig& c) {
  require_surface(c, SurfaceKind::circle);
  using cplx = std::complex<double>;
  ExperimentResult r;
  Rng rng(c.seed);
  // Trigonometric polynomials Σ_{|k|<=5} c_k ζ^k in ζ = (z - center)/R.
  std::vector<std::array<cplx, 11>> polys(static_cast<std::size_t>(c.corpus));
  for (auto& p : polys)
    for (auto& ck : p) ck = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  const cplx center(c.center[0], c.center[1]);
  auto zeta = [&](std::span<const double> x) { return (cplx(x[0], x[1]) - center) / c.radius; };
  auto to_mv = [](cplx z) {
    Multivector m(1);
    m[0] = z.real();
    m[1] = z.imag();
    return m;
  };
  auto partial = [](const std::array<cplx, 11>& p, cplx z, bool regular) {
    cplx s = 0.0;
    for (int k = -5; k <= 5; ++k)
      if ((k >= 0) == regular) s += p[static_cast<std::size_t>(k + 5)] * std::pow(z, k);
    return s;
  };
  const std::array<double, 6> radii{0.0, 0.5, 0.9, 1.1, 2.0, 4.0};
  std::vector<double> angles;
  for (std::size_t k = 0; k < c.probes; ++k) angles.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));

  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    double integral_max = 0.0, pv_max = 0.0;
    for (const auto& p : polys) {
      const auto f = BoundaryDensity::sample(mesh, [&](std::span<const double> x) {
        return to_mv(partial(p, zeta(x), true) + partial(p, zeta(x), false));
      });
      for (std::size_t k = 0; k < angles.size(); ++k) {
        const double rho = radii[k % radii.size()];
        const cplx zl = std::polar(rho, angles[k]);
        const cplx z = center + c.radius * zl;
        const std::array<double, 2> w{z.real(), z.imag()};
        const cplx exact = rho < 1.0 ? partial(p, zl, true) : -partial(p, zl, false);
        const double err = (cauchy_integral(mesh, f, w, side_of(c)).value - to_mv(exact)).norm();
        integral_max = std::max(integral_max, err);
        e.add(err);
      }
      for (std::size_t t : probe_nodes(mesh.size(), c.probes)) {
        const cplx zt = zeta(mesh.node(t));
        const cplx exact = 0.5 * (partial(p, zt, true) - partial(p, zt, false));
        const double err = (principal_value(mesh, f, t, side_of(c)).value - to_mv(exact)).norm();
        pv_max = std::max(pv_max, err);
        e.add(err);
      }
    }
    extra["integral_max"] = integral_max;
    extra["pv_max"] = pv_max;
  });
  r.criteria.push_back(at_most("final_error", final_error(r), c.tolerance.value_or(1e-8)));
  return r;
}

ExperimentResult order(const ExperimentConfig& c) {
  ExperimentResult r;
  const int n = DomainSpec::unit(c.surface).n();
  const Point pole = default_pole(c);
  if (domain_of(c).classify(as_span(pole)) != Region::interior)
    throw ConfigError("pole", "must lie inside the surface");
  int mismatches = 0;
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    nlohmann::json rows = nlohmann::json::array();
    for (int N = 0; N <= 2; ++N) {
      std::string spec = "kernel:" + point_text(pole) + "@" + std::to_string(N);
      for (int j = 1; j < n; ++j) spec += ",0";
      const auto base = density_function(n, spec);
      const auto g = BoundaryDensity::sample(mesh, [&](std::span<const double> x) { return -base(x); });
      const int expected = -n - N;
      const OrderAtInfinity moment = order_at_infinity(mesh, g, side_of(c));
      if (moment.kind != OrderAtInfinity::Kind::finite || moment.order != expected) ++mismatches;
      const double rho = mesh.max_node_radius();
      const Side side = side_of(c);
      const OrderAtInfinity slope = empirical_order_at_infinity(
          [&](std::span<const double> w) { return cauchy_integral(mesh, g, w, side).value; }, n,
          8.0 * rho, 5, 2.0, 8, c.seed);
      e.add(std::abs(slope.raw - expected));
      rows.push_back({{"N", N},
                      {"expected", expected},
                      {"moment_order", moment.order},
                      {"moment_kind", moment.kind == OrderAtInfinity::Kind::finite ? "finite" : "other"},
                      {"slope", slope.raw}});
    }
    extra["cases"] = rows;
  });
  r.criteria.push_back(equal_to("moment_route_mismatches", mismatches, 0));
  r.criteria.push_back(at_most("slope_deviation", final_error(r), c.tolerance.value_or(0.2)));
  return r;
}

ExperimentResult algebra(const ExperimentConfig& c) {
  ExperimentResult r;
  int assoc_fail = 0, anti_fail = 0;
  Rng rng(c.seed);
  constexpr int kSamples = 10000;
  for (int n : c.levels) {
    if (n < 1 || n > kMaxGenerators) throw ConfigError("levels", "algebra levels are generator counts 1..8");
    const auto start = Clock::now();
    const unsigned dim = 1u << n;
    if (n <= 3) {
      for (unsigned a = 0; a < dim; ++a)
        for (unsigned b = 0; b < dim; ++b) {
          const Multivector ea = Multivector::blade(n, a), eb = Multivector::blade(n, b);
          const Multivector ab = product(ea, eb);
          if (!(conjugate(ab) == product(conjugate(eb), conjugate(ea)))) ++anti_fail;
          for (unsigned k = 0; k < dim; ++k) {
            const Multivector ec = Multivector::blade(n, k);
            if (!(product(ab, ec) == product(ea, product(eb, ec)))) ++assoc_fail;
          }
        }
    }
    Errors e;
    for (int s = 0; s < kSamples; ++s) {
      Paravector x(n);
      const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));
      for (int k = 0; k <= n; ++k) x[k] = scale * rng.uniform(-1.0, 1.0);
      if (x.norm() == 0.0) continue;
      const Paravector inv = paravector_inverse(x);
      const Multivector one = Multivector::scalar(n, 1.0);
      const Multivector xm = x.to_multivector(), im = inv.to_multivector();
      e.add(std::max((product(xm, im) - one).norm(), (product(im, xm) - one).norm()));
    }
    const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    r.rows.push_back({n, 0.0, dim, e.max, e.l2(), c.timing ? ms : 0.0});
  }
  r.criteria.push_back(equal_to("associativity_failures", assoc_fail, 0));
  r.criteria.push_back(equal_to("anti_automorphism_failures", anti_fail, 0));
  double worst = 0.0;
  for (const auto& row : r.rows) worst = std::max(worst, row.error_maxnorm);
  r.criteria.push_back(at_most("inverse_error", worst, c.tolerance.value_or(1e-12)));
  return r;
}

ExperimentResult sie(const ExperimentConfig& c) {
  ExperimentResult r;
  const auto specs = corpus_specs(c);
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json&) {
    const auto a = BoundaryDensity::constant(mesh, Multivector::scalar(mesh.n(), c.sie_a));
    const auto b = BoundaryDensity::constant(mesh, Multivector::scalar(mesh.n(), c.sie_b));
    const auto coeffs = make_characteristic(a, b);
    for (const auto& spec : specs) {
      const auto f = make_density(mesh, spec);
      const auto phi = solve_characteristic_sie(mesh, coeffs, f);
      double worst = 0.0;
      for (const auto& v : characteristic_residual(mesh, coeffs, phi, f)) worst = std::max(worst, v.norm());
      e.add(worst / relative_scale(f));
    }
  });
  r.criteria.push_back(at_most("final_error", final_error(r), tolerance(c, 1e-4, 1e-2)));
  add_monotone_criterion(r, 2);
  return r;
}

ExperimentResult pbx(const ExperimentConfig& c) {
  ExperimentResult r;
  const auto specs = corpus_specs(c);
  const int n = DomainSpec::unit(c.surface).n();
  const auto partner = density_function(n, "random:" + std::to_string(c.seed + 1000));
  sweep(c, r, [&](const SurfaceMesh& mesh, Errors& e, nlohmann::json& extra) {
    const auto f = make_density(mesh, specs.front());
    const auto fn = f.evaluator();
    PairKernel k;
    if (fn) k = [&](std::span<const double> tau, std::span<const double> x) { return product(fn(tau), partner(x)); };
    const auto report = poincare_bertrand_discrepancy(mesh, f, k, c.probes);
    const double vol = unit_sphere_area(n);
    const double scale = 0.25 * vol * vol * relative_scale(f);
    for (const auto& row : report.special_case) e.add(row.discrepancy / scale);
    extra["orthogonality_max"] = report.orthogonality_max;
    extra["general_max"] = report.general_max;
    extra["general_relative"] = report.general_max / scale;
  });
  add_order_criterion(c, r, 1e-12);
  return r;
}

using Runner = ExperimentResult (*)(const ExperimentConfig&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"pv-constant", pv_constant}, {"span", span},           {"reproduction", reproduction},
      {"plemelj", plemelj},         {"inversion", inversion}, {"jump", jump},
      {"gap", gap},                 {"dirichlet", dirichlet}, {"classical", classical},
      {"order", order},             {"algebra", algebra},     {"sie", sie},
      {"pbx", pbx},
  };
  return m;
}

}  // namespace

const std::vector<ExperimentInfo>& builtin_experiments() {
  static const std::vector<ExperimentInfo> list{
      {"pv-constant", "cap-limit principal value of the constant 1 at probe nodes, against 1/2"},
      {"span", "C[1] inside, on and outside the surface, against 1, 1/2 and 0"},
      {"reproduction", "C[Z^a] reproduces Z^a inside and vanishes outside, |a| <= 3"},
      {"plemelj", "normal-approach limits from both sides against f/2 +- PV"},
      {"inversion", "S_op applied twice against the identity"},
      {"jump", "R_m jump problem for g = -E(. - a), plus the rejection of order m - 1"},
      {"gap", "constant-gap problem boundary residual"},
      {"dirichlet", "exterior and principal-value solvability criteria on 10 + 5 densities"},
      {"classical", "circle integrals against the complex residue formulas"},
      {"order", "order at infinity by moments and by log-slope"},
      {"algebra", "blade associativity, conjugation anti-automorphism, paravector inverse"},
      {"sie", "characteristic singular integral equation residual"},
      {"pbx", "Poincare-Bertrand balance; the general-kernel discrepancy is reported"},
  };
  return list;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto& table = runners();
  const auto it = table.find(config.experiment);
  if (it == table.end()) throw ConfigError("experiment", "unknown experiment '" + config.experiment + "'");
  ExperimentResult r = it->second(config);
  r.experiment = config.experiment;
  return r;
}

}  // namespace cliffbvp::tools
