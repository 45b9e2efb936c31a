#include <benchmark/benchmark.h>

#include <random>

#include "cliffbvp/bvp.hpp"
#include "cliffbvp/cauchy.hpp"

using namespace cliffbvp;

namespace {

SurfaceKind kind_of(const benchmark::State& state) { return state.range(0) == 1 ? SurfaceKind::circle : SurfaceKind::sphere2; }

BoundaryDensity test_density(const SurfaceMesh& mesh) {
  return BoundaryDensity::sample(mesh, [n = mesh.n()](std::span<const double> x) {
    Multivector m(n);
    m[0] = 1.0 + x[0] * x[1];
    m[1] = x[0];
    return m;
  });
}

}  // namespace

static void BM_BuildMesh(benchmark::State& state) {
  const DomainSpec d = DomainSpec::unit(kind_of(state));
  for (auto _ : state) benchmark::DoNotOptimize(build_mesh(d, static_cast<int>(state.range(1))));
}
BENCHMARK(BM_BuildMesh)->Args({1, 8})->Args({2, 4})->Args({2, 6});

static void BM_Product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Multivector a(n), b(n);
  for (auto& c : a.coeffs()) c = u(rng);
  for (auto& c : b.coeffs()) c = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Product)->DenseRange(1, 4);

static void BM_CauchyIntegral(benchmark::State& state) {
  const SurfaceMesh mesh = build_mesh(DomainSpec::unit(kind_of(state)), static_cast<int>(state.range(1)));
  const BoundaryDensity f = test_density(mesh);
  const std::vector<double> w(static_cast<std::size_t>(mesh.dim()), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(cauchy_integral(mesh, f, w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(mesh.size()));
}
BENCHMARK(BM_CauchyIntegral)->Args({1, 8})->Args({2, 4})->Args({2, 5});

static void BM_PrincipalValue(benchmark::State& state) {
  const SurfaceMesh mesh = build_mesh(DomainSpec::unit(kind_of(state)), static_cast<int>(state.range(1)));
  const BoundaryDensity f = test_density(mesh);
  const auto method = state.range(2) == 0 ? PvMethod::regularized : PvMethod::delta_limit;
  for (auto _ : state) benchmark::DoNotOptimize(principal_value(mesh, f, 0, Side::left, method));
}
BENCHMARK(BM_PrincipalValue)->Args({1, 8, 0})->Args({1, 8, 1})->Args({2, 4, 0})->Args({2, 4, 1});

static void BM_AllPrincipalValues(benchmark::State& state) {
  const SurfaceMesh mesh = build_mesh(DomainSpec::unit(kind_of(state)), static_cast<int>(state.range(1)));
  const BoundaryDensity f = test_density(mesh);
  for (auto _ : state) benchmark::DoNotOptimize(invert_cauchy_pv(mesh, f));
}
BENCHMARK(BM_AllPrincipalValues)->Args({1, 6})->Args({2, 3})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
