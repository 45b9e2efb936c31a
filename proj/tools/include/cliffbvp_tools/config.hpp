#pragma once

// Experiment configuration: a `key = value` text file ('#' starts a comment),
// every key overridable from the command line.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffbvp/clifford.hpp"
#include "cliffbvp/surface.hpp"

namespace cliffbvp::tools {

/// Invalid configuration; the message starts with the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  std::string experiment;
  SurfaceKind surface = SurfaceKind::circle;
  Point center;
  double radius = 1.0;
  /// Refinement levels (mesh level indices), strictly increasing.
  std::vector<int> levels;
  /// `|`-separated density specs; empty selects the experiment default.
  std::string density;
  int corpus = 10;
  std::size_t probes = 32;
  /// Jump/gap order bound; unset selects -n.
  std::optional<int> m;
  /// Constant gap G as blade coefficients.
  std::vector<double> gap{2.0};
  double sie_a = 3.0;
  double sie_b = 1.0;
  /// Pole for kernel-based experiments; unset selects a fixed interior point.
  std::optional<Point> pole;
  /// Overrides the experiment's default error threshold.
  std::optional<double> tolerance;
  double min_order = 1.0;
  std::string side = "left";
  std::uint64_t seed = 1;
  bool timing = false;
  std::string output_csv;
  std::string output_json;

  /// Every key with its effective value, for the report echo.
  std::map<std::string, std::string> echo;
};

/// Known keys in documentation order.
const std::vector<std::string>& config_keys();

/// Parses `key = value` lines into a raw map; throws ConfigError.
std::map<std::string, std::string> parse_config_text(std::istream& in, const std::string& source);

/// Applies defaults, validates and converts a raw map.
ExperimentConfig resolve_config(const std::map<std::string, std::string>& raw);

/// Splits `key=value`; throws ConfigError when '=' is missing.
std::pair<std::string, std::string> split_override(const std::string& text);

}  // namespace cliffbvp::tools
