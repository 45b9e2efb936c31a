#include "cliffbvp_tools/config.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace cliffbvp::tools {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError(key, "expected a number, got '" + text + "'");
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError(key, "expected an integer, got '" + text + "'");
  return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  std::size_t index = 0;
  while (std::getline(in, item, ',')) {
    out.push_back(to_double(key + "[" + std::to_string(index) + "]", trim(item)));
    ++index;
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + text + "'");
}

const std::map<std::string, std::string>& defaults() {
  static const std::map<std::string, std::string> d{
      {"surface", "circle"}, {"center", ""},        {"radius", "1"},       {"density", ""},
      {"corpus", "10"},      {"probes", "32"},      {"m", ""},             {"gap", "2"},
      {"sie.a", "3"},        {"sie.b", "1"},        {"pole", ""},          {"tolerance", ""},
      {"min_order", "1"},    {"side", "left"},      {"seed", "1"},         {"timing", "false"},
      {"output.csv", ""},    {"output.json", ""},
  };
  return d;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "experiment", "surface", "center",    "radius",    "levels", "density",
      "corpus",     "probes",  "m",         "gap",       "sie.a",  "sie.b",
      "pole",       "tolerance", "min_order", "side",    "seed",   "timing",
      "output.csv", "output.json",
  };
  return keys;
}

std::pair<std::string, std::string> split_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError(text, "override must look like key=value");
  return {trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

std::map<std::string, std::string> parse_config_text(std::istream& in, const std::string& source) {
  std::map<std::string, std::string> raw;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(source + ":" + std::to_string(number), "expected key = value");
    raw[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return raw;
}

ExperimentConfig resolve_config(const std::map<std::string, std::string>& raw) {
  const auto& keys = config_keys();
  for (const auto& [key, value] : raw)
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(key, "unknown key");

  std::map<std::string, std::string> v = defaults();
  for (const auto& [key, value] : raw) v[key] = value;

  ExperimentConfig c;
  if (!v.count("experiment") || v["experiment"].empty()) throw ConfigError("experiment", "missing");
  c.experiment = v["experiment"];

  try {
    c.surface = parse_surface_kind(v["surface"]);
  } catch (const std::exception&) {
    throw ConfigError("surface", "unknown surface '" + v["surface"] + "'");
  }
  const int dim = DomainSpec::unit(c.surface).n() + 1;
  if (v["center"].empty()) {
    c.center.assign(static_cast<std::size_t>(dim), 0.0);
  } else {
    const auto p = to_doubles("center", v["center"]);
    if (static_cast<int>(p.size()) != dim)
      throw ConfigError("center", "needs " + std::to_string(dim) + " coordinates");
    c.center.assign(p.begin(), p.end());
  }
  c.radius = to_double("radius", v["radius"]);
  if (!(c.radius > 0.0)) throw ConfigError("radius", "must be positive");

  if (!v.count("levels") || v["levels"].empty()) throw ConfigError("levels", "empty level list");
  {
    std::istringstream in(v["levels"]);
    std::string item;
    while (std::getline(in, item, ',')) {
      const std::string field = "levels[" + std::to_string(c.levels.size()) + "]";
      const long long level = to_integer(field, trim(item));
      if (level < 0 || level > 12) throw ConfigError(field, "level out of range 0..12");
      if (!c.levels.empty() && level <= c.levels.back())
        throw ConfigError(field, "levels must be strictly increasing");
      c.levels.push_back(static_cast<int>(level));
    }
  }

  c.density = v["density"];
  const long long corpus = to_integer("corpus", v["corpus"]);
  if (corpus < 1) throw ConfigError("corpus", "must be at least 1");
  c.corpus = static_cast<int>(corpus);
  const long long probes = to_integer("probes", v["probes"]);
  if (probes < 1) throw ConfigError("probes", "must be at least 1");
  c.probes = static_cast<std::size_t>(probes);
  if (!v["m"].empty()) c.m = static_cast<int>(to_integer("m", v["m"]));
  c.gap = to_doubles("gap", v["gap"]);
  if (c.gap.empty()) throw ConfigError("gap", "needs at least one coefficient");
  c.sie_a = to_double("sie.a", v["sie.a"]);
  c.sie_b = to_double("sie.b", v["sie.b"]);
  if (!v["pole"].empty()) {
    const auto p = to_doubles("pole", v["pole"]);
    if (static_cast<int>(p.size()) != dim)
      throw ConfigError("pole", "needs " + std::to_string(dim) + " coordinates");
    c.pole = Point(p.begin(), p.end());
  }
  if (!v["tolerance"].empty()) {
    c.tolerance = to_double("tolerance", v["tolerance"]);
    if (!(*c.tolerance > 0.0)) throw ConfigError("tolerance", "must be positive");
  }
  c.min_order = to_double("min_order", v["min_order"]);
  c.side = v["side"];
  if (c.side != "left" && c.side != "right") throw ConfigError("side", "must be left or right");
  const long long seed = to_integer("seed", v["seed"]);
  if (seed < 0) throw ConfigError("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  c.timing = to_bool("timing", v["timing"]);
  c.output_csv = v["output.csv"];
  c.output_json = v["output.json"];
  c.echo = v;
  return c;
}

}  // namespace cliffbvp::tools
