#include "cliffbvp_tools/densities.hpp"

#include <fstream>
#include <sstream>

#include "cliffbvp/error.hpp"
#include "cliffbvp/fueter.hpp"
#include "cliffbvp/numerics.hpp"

namespace cliffbvp::tools {
namespace {

double parse_number(const std::string& text, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw InvalidInput("density '" + spec + "': bad number '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<double> numbers(const std::string& list, const std::string& spec) {
  std::vector<double> out;
  for (const auto& item : split(list, ',')) out.push_back(parse_number(item, spec));
  return out;
}

MultiIndex multi_index(const std::string& list, int n, const std::string& spec) {
  const auto v = numbers(list, spec);
  if (static_cast<int>(v.size()) != n)
    throw InvalidInput("density '" + spec + "': multi-index needs " + std::to_string(n) + " entries");
  std::vector<int> entries;
  for (double d : v) {
    if (d < 0 || d != static_cast<int>(d))
      throw InvalidInput("density '" + spec + "': multi-index entries are non-negative integers");
    entries.push_back(static_cast<int>(d));
  }
  return MultiIndex(entries);
}

Multivector blades(int n, const std::vector<double>& c, const std::string& spec) {
  const std::size_t dim = std::size_t{1} << n;
  if (c.empty() || c.size() > dim)
    throw InvalidInput("density '" + spec + "': coefficient list longer than the algebra");
  Multivector m(n);
  for (std::size_t k = 0; k < c.size(); ++k) m[static_cast<unsigned>(k)] = c[k];
  return m;
}

// Exponent vectors over x_0..x_n with total degree <= 2, in a fixed order.
std::vector<std::vector<int>> low_monomials(int n) {
  std::vector<std::vector<int>> out;
  const int vars = n + 1;
  out.emplace_back(vars, 0);
  for (int i = 0; i < vars; ++i) {
    std::vector<int> e(vars, 0);
    e[i] = 1;
    out.push_back(e);
  }
  for (int i = 0; i < vars; ++i)
    for (int j = i; j < vars; ++j) {
      std::vector<int> e(vars, 0);
      ++e[i];
      ++e[j];
      out.push_back(e);
    }
  return out;
}

std::vector<Multivector> read_samples(const std::string& path, int n, const std::string& spec) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("density '" + spec + "': cannot open " + path);
  std::vector<Multivector> out;
  std::string line;
  const std::size_t dim = std::size_t{1} << n;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    Multivector m(n);
    for (std::size_t k = 0; k < dim; ++k)
      if (!(row >> m[static_cast<unsigned>(k)]))
        throw InvalidInput("density '" + spec + "': short row in " + path);
    out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<BuiltinInfo> builtin_densities() {
  return {
      {"constant[:c]", "scalar constant c (default 1)"},
      {"coord:k", "coordinate trace x_k"},
      {"zpow:a1,...,an", "trace of the symmetric power Z^a"},
      {"kernel:a0,...,an[@b1,...,bn]", "trace of E(x - a) or of its derivative d^b E(x - a)"},
      {"hyper:a=c;...", "trace of the hyperpolynomial sum Z^a c_a (c over blades)"},
      {"random:seed", "seeded degree-2 polynomial with multivector coefficients in [-1, 1]"},
      {"sum:s1+s2+...", "pointwise sum of densities"},
      {"file:path", "per-node samples, 2^n numbers per line"},
  };
}

std::vector<std::string> split_specs(const std::string& list) {
  std::vector<std::string> out;
  for (auto& s : split(list, '|'))
    if (!s.empty()) out.push_back(s);
  return out;
}

std::vector<std::string> random_corpus(int count, std::uint64_t seed) {
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) out.push_back("random:" + std::to_string(seed + static_cast<std::uint64_t>(i)));
  return out;
}

DensityFunction density_function(int n, const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (kind == "constant") {
    const double c = arg.empty() ? 1.0 : parse_number(arg, spec);
    return [n, c](std::span<const double>) { return Multivector::scalar(n, c); };
  }
  if (kind == "coord") {
    const double k = parse_number(arg, spec);
    if (k < 0 || k > n || k != static_cast<int>(k))
      throw InvalidInput("density '" + spec + "': coordinate out of range");
    const auto idx = static_cast<std::size_t>(k);
    return [n, idx](std::span<const double> x) { return Multivector::scalar(n, x[idx]); };
  }
  if (kind == "zpow") {
    const MultiIndex alpha = multi_index(arg, n, spec);
    return [alpha](std::span<const double> x) { return symmetric_power(alpha, x); };
  }
  if (kind == "kernel") {
    const auto at = arg.find('@');
    const auto a = numbers(arg.substr(0, at), spec);
    if (static_cast<int>(a.size()) != n + 1)
      throw InvalidInput("density '" + spec + "': point needs " + std::to_string(n + 1) + " coordinates");
    Point pole(a.begin(), a.end());
    if (at == std::string::npos)
      return [pole](std::span<const double> x) { return kernel_E(x, as_span(pole)).to_multivector(); };
    const MultiIndex alpha = multi_index(arg.substr(at + 1), n, spec);
    const KernelDerivative& d = kernel_derivative(alpha);
    return [pole, &d](std::span<const double> x) {
      Point shifted;
      for (std::size_t k = 0; k < x.size(); ++k) shifted.push_back(x[k] - pole[k]);
      return d(as_span(shifted)).to_multivector();
    };
  }
  if (kind == "hyper") {
    HyperPolynomial p(n);
    for (const auto& term : split(arg, ';')) {
      const auto eq = term.find('=');
      if (eq == std::string::npos) throw InvalidInput("density '" + spec + "': expected α=c");
      p.add_term(multi_index(term.substr(0, eq), n, spec), blades(n, numbers(term.substr(eq + 1), spec), spec));
    }
    return [p](std::span<const double> x) { return p(x); };
  }
  if (kind == "random") {
    const double s = parse_number(arg, spec);
    if (s < 0 || s != static_cast<double>(static_cast<std::uint64_t>(s)))
      throw InvalidInput("density '" + spec + "': seed must be a non-negative integer");
    Rng rng(static_cast<std::uint64_t>(s));
    const auto monomials = low_monomials(n);
    std::vector<Multivector> coeffs;
    for (std::size_t i = 0; i < monomials.size(); ++i) coeffs.push_back(random_multivector(n, rng));
    return [n, monomials, coeffs](std::span<const double> x) {
      Multivector out(n);
      for (std::size_t i = 0; i < monomials.size(); ++i) {
        double v = 1.0;
        for (std::size_t k = 0; k < monomials[i].size(); ++k)
          for (int p = 0; p < monomials[i][k]; ++p) v *= x[k];
        out.add_scaled(coeffs[i], v);
      }
      return out;
    };
  }
  if (kind == "sum") {
    std::vector<DensityFunction> parts;
    for (const auto& part : split(arg, '+')) parts.push_back(density_function(n, part));
    if (parts.empty()) throw InvalidInput("density '" + spec + "': empty sum");
    return [n, parts](std::span<const double> x) {
      Multivector out(n);
      for (const auto& f : parts) out += f(x);
      return out;
    };
  }
  if (kind == "file") return {};
  throw InvalidInput("unknown density '" + spec + "'");
}

BoundaryDensity make_density(const SurfaceMesh& mesh, const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    auto samples = read_samples(spec.substr(5), mesh.n(), spec);
    if (samples.size() != mesh.size())
      throw InvalidInput("density '" + spec + "': " + std::to_string(samples.size()) +
                         " samples for " + std::to_string(mesh.size()) + " nodes");
    return BoundaryDensity(mesh.n(), std::move(samples));
  }
  return BoundaryDensity::sample(mesh, density_function(mesh.n(), spec));
}

}  // namespace cliffbvp::tools
