#pragma once

// Builtin experiments: each sweeps the configured levels, tabulates errors
// and derives pass/fail verdicts from the tabulated numbers only.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cliffbvp/numerics.hpp"
#include "cliffbvp_tools/config.hpp"

namespace cliffbvp::tools {

struct LevelRow {
  int level = 0;
  double h = 0.0;
  std::size_t nodes = 0;
  double error_maxnorm = 0.0;
  double error_l2 = 0.0;
  double runtime_ms = 0.0;
};

struct Criterion {
  std::string name;
  double value = 0.0;
  std::string relation;  ///< "<=", ">=" or "=="
  double threshold = 0.0;
  bool pass = false;
};

Criterion at_most(std::string name, double value, double threshold);
Criterion at_least(std::string name, double value, double threshold);
Criterion equal_to(std::string name, double value, double expected);

struct ExperimentResult {
  std::string experiment;
  std::vector<LevelRow> rows;
  std::optional<OrderFit> fit;
  std::vector<Criterion> criteria;
  /// Experiment-specific numbers (reported, not judged).
  nlohmann::json details = nlohmann::json::object();

  bool passed() const;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
};

const std::vector<ExperimentInfo>& builtin_experiments();

/// Throws ConfigError for an unknown experiment or an unsupported surface,
/// cliffbvp::Error on numerical failure.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace cliffbvp::tools
