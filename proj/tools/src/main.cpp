#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cliffbvp/error.hpp"
#include "cliffbvp/numerics.hpp"
#include "cliffbvp/surface.hpp"
#include "cliffbvp_tools/config.hpp"
#include "cliffbvp_tools/densities.hpp"
#include "cliffbvp_tools/experiments.hpp"
#include "cliffbvp_tools/report.hpp"

namespace {

using namespace cliffbvp;
using namespace cliffbvp::tools;

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void configure_threads() {
  const char* env = std::getenv("CLIFFBVP_THREADS");
  if (!env || !*env) return;
  try {
    const int threads = std::stoi(env);
    if (threads >= 1) set_thread_count(threads);
  } catch (const std::exception&) {
    std::cerr << "warning: ignoring CLIFFBVP_THREADS=" << env << "\n";
  }
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int run(const std::string& path, const std::vector<std::string>& overrides) {
  ExperimentConfig config;
  try {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    auto raw = parse_config_text(in, path);
    for (const auto& o : overrides) {
      const auto [key, value] = split_override(o);
      raw[key] = value;
    }
    config = resolve_config(raw);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  ExperimentResult result;
  std::string failure;
  try {
    result = run_experiment(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const cliffbvp::Error& e) {
    failure = e.what();
    result.experiment = config.experiment;
  }

  std::ostringstream csv;
  write_csv(csv, result);
  const std::string json = make_report(config, result, failure).dump(2) + "\n";
  bool written = true;
  if (!config.output_csv.empty()) written &= write_file(config.output_csv, csv.str());
  if (!config.output_json.empty()) written &= write_file(config.output_json, json);
  if (config.output_csv.empty()) std::cout << csv.str();
  write_summary(std::cout, result);
  if (!written) {
    std::cerr << "error: could not write report files\n";
    return kExitNumerical;
  }
  if (!failure.empty()) {
    std::cerr << "numerical failure: " << failure << "\n";
    return kExitNumerical;
  }
  return result.passed() ? 0 : kExitFail;
}

void list() {
  std::cout << "experiments:\n";
  for (const auto& e : builtin_experiments()) std::cout << "  " << e.name << "  " << e.description << "\n";
  std::cout << "densities:\n";
  for (const auto& d : builtin_densities()) std::cout << "  " << d.name << "  " << d.description << "\n";
  std::cout << "surfaces:\n  circle  sphere2  sphere3\n";
}

// kind:level=L:radius=R:center=a,b,...
int export_mesh(const std::string& spec, const std::string& path) {
  try {
    std::istringstream in(spec);
    std::string part;
    std::getline(in, part, ':');
    DomainSpec d = DomainSpec::unit(parse_surface_kind(part));
    int level = 0;
    while (std::getline(in, part, ':')) {
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw ConfigError(part, "expected key=value in mesh spec");
      const std::string key = part.substr(0, eq), value = part.substr(eq + 1);
      if (key == "level") {
        level = std::stoi(value);
      } else if (key == "radius") {
        d.radius = std::stod(value);
      } else if (key == "center") {
        d.center.clear();
        std::istringstream cs(value);
        std::string c;
        while (std::getline(cs, c, ',')) d.center.push_back(std::stod(c));
      } else {
        throw ConfigError(key, "unknown mesh spec key");
      }
    }
    d.validate();
    if (level < 0 || level > 12) throw ConfigError("level", "out of range 0..12");
    const SurfaceMesh mesh = build_mesh(d, level);
    std::ofstream out(path, std::ios::binary);
    write_mesh(out, mesh);
    if (!out) {
      std::cerr << "error: could not write " << path << "\n";
      return kExitNumerical;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "mesh spec error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "mesh spec error: " << e.what() << "\n";
  }
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cauchy-type integrals and boundary value problems on Clifford hypersurfaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run_cmd = app.add_subcommand("run", "run an experiment config");
  run_cmd->add_option("config", config_path, "key = value config file")->required();
  run_cmd->add_option("overrides", overrides, "key=value overrides");

  app.add_subcommand("list", "list builtin experiments and densities");

  std::string mesh_spec, mesh_path;
  auto* mesh_cmd = app.add_subcommand("mesh", "mesh utilities");
  mesh_cmd->require_subcommand(1);
  auto* export_cmd = mesh_cmd->add_subcommand("export", "write a builder mesh to a file");
  export_cmd->add_option("spec", mesh_spec, "kind:level=L:radius=R:center=...")->required();
  export_cmd->add_option("path", mesh_path, "output file")->required();

  CLI11_PARSE(app, argc, argv);
  configure_threads();

  if (run_cmd->parsed()) return run(config_path, overrides);
  if (export_cmd->parsed()) return export_mesh(mesh_spec, mesh_path);
  list();
  return 0;
}
