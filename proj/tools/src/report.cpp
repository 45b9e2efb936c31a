#include "cliffbvp_tools/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace cliffbvp::tools {
namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

// JSON has no infinity or NaN; keep them readable as strings.
nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentResult& result) {
  os << "level,h,nodes,error_maxnorm,error_l2,runtime_ms\n";
  for (const auto& row : result.rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", row.runtime_ms);
    os << row.level << ',' << number(row.h) << ',' << row.nodes << ',' << number(row.error_maxnorm)
       << ',' << number(row.error_l2) << ',' << ms << '\n';
  }
}

nlohmann::json make_report(const ExperimentConfig& config, const ExperimentResult& result,
                           const std::string& failure) {
  nlohmann::json j;
  j["config"] = config.echo;
  j["experiment"] = config.experiment;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : result.rows)
    rows.push_back({{"level", row.level},
                    {"h", json_number(row.h)},
                    {"nodes", row.nodes},
                    {"error_maxnorm", json_number(row.error_maxnorm)},
                    {"error_l2", json_number(row.error_l2)},
                    {"runtime_ms", json_number(row.runtime_ms)}});
  j["levels"] = rows;
  if (result.fit)
    j["fitted_order"] = {{"order", json_number(result.fit->order)},
                         {"confidence_width", json_number(result.fit->confidence_width)},
                         {"points_used", result.fit->points_used},
                         {"at_noise_floor", result.fit->at_noise_floor}};
  nlohmann::json criteria = nlohmann::json::array();
  for (const auto& c : result.criteria)
    criteria.push_back({{"name", c.name},
                        {"value", json_number(c.value)},
                        {"relation", c.relation},
                        {"threshold", json_number(c.threshold)},
                        {"verdict", c.pass ? "pass" : "fail"}});
  j["criteria"] = criteria;
  j["details"] = result.details;
  if (!failure.empty()) j["failure"] = failure;
  j["pass"] = failure.empty() && result.passed();
  return j;
}

void write_summary(std::ostream& os, const ExperimentResult& result) {
  for (const auto& c : result.criteria)
    os << (c.pass ? "PASS " : "FAIL ") << c.name << ' ' << number(c.value) << ' ' << c.relation << ' '
       << number(c.threshold) << '\n';
}

}  // namespace cliffbvp::tools
