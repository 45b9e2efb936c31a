#pragma once

// Named builtin densities for experiments.
//
//   constant[:c]              scalar c (default 1)
//   coord:k                   x_k
//   zpow:a1,...,an            Z^α
//   kernel:a0,...,an[@α]      E(x - a), or ∂^α E(x - a)
//   hyper:α=c;α=c...          Σ Z^α c_α, α and c comma lists (c over blades)
//   random:seed               seeded multivector polynomial of degree <= 2
//   sum:spec+spec...          pointwise sum
//   file:path                 per-node samples, one line of 2^n numbers each

#include <cstdint>
#include <string>
#include <vector>

#include "cliffbvp/cauchy.hpp"

namespace cliffbvp::tools {

struct BuiltinInfo {
  std::string name;
  std::string description;
};

std::vector<BuiltinInfo> builtin_densities();

/// Throws InvalidInput for an unknown or malformed spec.
BoundaryDensity make_density(const SurfaceMesh& mesh, const std::string& spec);
/// The exact function behind a spec; empty for file densities.
DensityFunction density_function(int n, const std::string& spec);

/// random:seed, random:seed+1, ...
std::vector<std::string> random_corpus(int count, std::uint64_t seed);

/// Splits a `|`-separated list of specs.
std::vector<std::string> split_specs(const std::string& list);

}  // namespace cliffbvp::tools
