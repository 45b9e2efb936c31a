#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cliffbvp/error.hpp"
#include "cliffbvp/surface.hpp"

using namespace cliffbvp;

namespace {

DomainSpec shifted(SurfaceKind kind, double radius) {
  DomainSpec d = DomainSpec::unit(kind);
  for (std::size_t k = 0; k < d.center.size(); ++k) d.center[k] = 0.1 * static_cast<double>(k + 1);
  d.radius = radius;
  return d;
}

}  // namespace

class SurfaceKinds : public ::testing::TestWithParam<SurfaceKind> {};

TEST_P(SurfaceKinds, NodesLieOnTheSphereWithOutwardUnitNormals) {
  const DomainSpec d = shifted(GetParam(), 1.7);
  for (int level = 0; level <= 2; ++level) {
    const SurfaceMesh mesh = build_mesh(d, level);
    EXPECT_EQ(mesh.size(), mesh_node_count(d.kind, level));
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      double r2 = 0.0, nn = 0.0, dot = 0.0;
      for (int k = 0; k < mesh.dim(); ++k) {
        const double rel = mesh.node(i)[k] - d.center[static_cast<std::size_t>(k)];
        r2 += rel * rel;
        nn += mesh.normal(i)[k] * mesh.normal(i)[k];
        dot += rel * mesh.normal(i)[k];
      }
      EXPECT_NEAR(std::sqrt(r2), d.radius, 1e-12);
      EXPECT_NEAR(nn, 1.0, 1e-12);
      EXPECT_NEAR(dot, d.radius, 1e-12);
    }
  }
}

TEST_P(SurfaceKinds, WeightsSumToTheArea) {
  const DomainSpec d = shifted(GetParam(), 0.8);
  const SurfaceMesh mesh = build_mesh(d, 2);
  EXPECT_NEAR(mesh.total_weight(), d.area(), 1e-10 * d.area());
}

TEST_P(SurfaceKinds, RefinementShrinksSpacing) {
  const DomainSpec d = DomainSpec::unit(GetParam());
  const SurfaceMesh coarse = build_mesh(d, 1);
  const SurfaceMesh fine = refine(coarse);
  EXPECT_EQ(fine.level(), 2);
  EXPECT_GT(fine.size(), coarse.size());
  EXPECT_LT(fine.h(), coarse.h());
}

TEST_P(SurfaceKinds, TextRoundTrip) {
  const SurfaceMesh mesh = build_mesh(shifted(GetParam(), 2.0), 1);
  std::stringstream io;
  write_mesh(io, mesh);
  const SurfaceMesh back = read_mesh(io);
  ASSERT_EQ(back.size(), mesh.size());
  EXPECT_EQ(back.n(), mesh.n());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    EXPECT_EQ(back.weight(i), mesh.weight(i));
    for (int k = 0; k < mesh.dim(); ++k) {
      EXPECT_EQ(back.node(i)[k], mesh.node(i)[k]);
      EXPECT_EQ(back.normal(i)[k], mesh.normal(i)[k]);
    }
  }
}

INSTANTIATE_TEST_SUITE_P(All, SurfaceKinds,
                         ::testing::Values(SurfaceKind::circle, SurfaceKind::sphere2, SurfaceKind::sphere3));

TEST(Surface, NodeCounts) {
  EXPECT_EQ(mesh_node_count(SurfaceKind::circle, 8), 4096u);
  EXPECT_EQ(mesh_node_count(SurfaceKind::sphere2, 5), 20480u);
  EXPECT_EQ(mesh_node_count(SurfaceKind::sphere3, 1), 1024u);
}

TEST(Surface, MeshHeaderFormat) {
  const SurfaceMesh mesh = build_mesh(DomainSpec::unit(SurfaceKind::sphere2), 0);
  std::stringstream io;
  write_mesh(io, mesh);
  std::string word;
  int n = 0;
  std::size_t count = 0;
  io >> word >> n;
  EXPECT_EQ(word, "n");
  EXPECT_EQ(n, 2);
  io >> word >> count;
  EXPECT_EQ(word, "nodes");
  EXPECT_EQ(count, mesh.size());
}

TEST(Surface, ClassifyRegions) {
  const DomainSpec d = DomainSpec::unit(SurfaceKind::sphere2);
  const double inside[] = {0.2, 0.1, 0.0}, on[] = {0.0, 0.0, 1.0}, outside[] = {1.5, 0.0, 0.0};
  EXPECT_EQ(d.classify(inside), Region::interior);
  EXPECT_EQ(d.classify(on), Region::boundary);
  EXPECT_EQ(d.classify(outside), Region::exterior);
}

TEST(Surface, CapExclusion) {
  const SurfaceMesh mesh = build_mesh(DomainSpec::unit(SurfaceKind::circle), 3);
  const CapExclusion cap{mesh.node_point(0), 0.3};
  const SurfaceMesh rest = exclude_cap(mesh, cap);
  EXPECT_LT(rest.size(), mesh.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    double d2 = 0.0;
    for (int k = 0; k < 2; ++k) d2 += std::pow(rest.node(i)[k] - cap.center[static_cast<std::size_t>(k)], 2);
    EXPECT_GT(std::sqrt(d2), cap.radius);
  }
  EXPECT_THROW(exclude_cap(mesh, CapExclusion{mesh.node_point(0), 5.0}), DegenerateExclusion);
}

TEST(Surface, MalformedInput) {
  std::stringstream bad("n 2 nodes 1\n0 0 1 0 0 2 1\n");
  EXPECT_THROW(read_mesh(bad), InvalidInput);
  std::stringstream header("dim 2\n");
  EXPECT_THROW(read_mesh(header), InvalidInput);
  EXPECT_THROW(parse_surface_kind("torus"), InvalidInput);
  DomainSpec d = DomainSpec::unit(SurfaceKind::sphere2);
  d.radius = -1.0;
  EXPECT_THROW(build_mesh(d, 0), InvalidInput);
}
