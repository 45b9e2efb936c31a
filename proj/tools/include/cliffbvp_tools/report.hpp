#pragma once

#include <iosfwd>
#include <string>

#include "cliffbvp_tools/config.hpp"
#include "cliffbvp_tools/experiments.hpp"

namespace cliffbvp::tools {

/// level,h,nodes,error_maxnorm,error_l2,runtime_ms
void write_csv(std::ostream& os, const ExperimentResult& result);

/// Config echo, table, fit, criteria and details. `failure` records a
/// numerical error that aborted the run.
nlohmann::json make_report(const ExperimentConfig& config, const ExperimentResult& result,
                           const std::string& failure = {});

/// One line per criterion: `PASS name value relation threshold`.
void write_summary(std::ostream& os, const ExperimentResult& result);

}  // namespace cliffbvp::tools
