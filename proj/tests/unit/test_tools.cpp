#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "cliffbvp/error.hpp"
#include "cliffbvp_tools/config.hpp"
#include "cliffbvp_tools/densities.hpp"
#include "cliffbvp_tools/experiments.hpp"
#include "cliffbvp_tools/report.hpp"

using namespace cliffbvp;
using namespace cliffbvp::tools;

namespace {

std::string error_field(const std::map<std::string, std::string>& raw) {
  try {
    resolve_config(raw);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(Config, ParsesKeyValueText) {
  std::istringstream in("# comment\nexperiment = sie\nsurface=circle  \nlevels = 0, 1,2\n\nsie.a = 4\n");
  const auto raw = parse_config_text(in, "test");
  EXPECT_EQ(raw.at("experiment"), "sie");
  EXPECT_EQ(raw.at("surface"), "circle");
  const ExperimentConfig c = resolve_config(raw);
  EXPECT_EQ(c.levels, (std::vector<int>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(c.sie_a, 4.0);
  EXPECT_EQ(c.echo.at("experiment"), "sie");
}

TEST(Config, ErrorsNameTheField) {
  const std::map<std::string, std::string> base{{"experiment", "sie"}, {"surface", "circle"}, {"levels", "1"}};
  auto with = [&](const std::string& k, const std::string& v) {
    auto raw = base;
    raw[k] = v;
    return raw;
  };
  EXPECT_EQ(error_field(base), "");
  EXPECT_EQ(error_field(with("levels", "")), "levels");
  EXPECT_EQ(error_field(with("levels", "2,1")), "levels[1]");
  EXPECT_EQ(error_field(with("levels", "x")), "levels[0]");
  EXPECT_EQ(error_field(with("surface", "torus")), "surface");
  EXPECT_EQ(error_field(with("radius", "-1")), "radius");
  EXPECT_EQ(error_field(with("bogus", "1")), "bogus");
  std::istringstream in("no equals sign\n");
  EXPECT_THROW(parse_config_text(in, "test"), ConfigError);
  EXPECT_THROW(split_override("levels"), ConfigError);
  EXPECT_EQ(split_override("levels=1,2").second, "1,2");
}

TEST(Densities, SpecsEvaluate) {
  const double x[] = {0.5, -0.25, 2.0};
  EXPECT_DOUBLE_EQ(density_function(2, "constant:3")(x)[0], 3.0);
  EXPECT_DOUBLE_EQ(density_function(2, "coord:2")(x)[0], 2.0);
  const Multivector z = density_function(2, "zpow:1,0")(x);
  EXPECT_DOUBLE_EQ(z[0], -0.25);
  EXPECT_DOUBLE_EQ(z[1], -0.5);
  const Multivector s = density_function(2, "sum:constant:1+coord:0")(x);
  EXPECT_DOUBLE_EQ(s[0], 1.5);
  EXPECT_THROW(density_function(2, "nonsense"), InvalidInput);
  EXPECT_THROW(density_function(2, "coord:7"), InvalidInput);
}

TEST(Densities, RandomCorpusIsSeeded) {
  const auto corpus = random_corpus(3, 40);
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus[0], "random:40");
  const double x[] = {0.1, 0.2, 0.3};
  EXPECT_EQ(density_function(2, corpus[1])(x), density_function(2, corpus[1])(x));
  EXPECT_FALSE(density_function(2, corpus[1])(x) == density_function(2, corpus[2])(x));
  EXPECT_EQ(split_specs("a|b|c").size(), 3u);
}

TEST(Experiments, RegistryIsComplete) {
  std::set<std::string> names;
  for (const auto& e : builtin_experiments()) names.insert(e.name);
  for (const char* name : {"pv-constant", "span", "reproduction", "plemelj", "inversion", "jump", "gap", "dirichlet",
                           "classical", "order", "algebra", "sie", "pbx"})
    EXPECT_TRUE(names.count(name)) << name;
  EXPECT_THROW(run_experiment(resolve_config({{"experiment", "nope"}, {"levels", "1"}})), ConfigError);
}

TEST(Experiments, ReportsAreDeterministic) {
  const ExperimentConfig config =
      resolve_config({{"experiment", "sie"}, {"surface", "circle"}, {"levels", "0,1"}, {"seed", "3"}});
  auto render = [&] {
    const ExperimentResult r = run_experiment(config);
    std::ostringstream csv;
    write_csv(csv, r);
    return csv.str() + make_report(config, r).dump(2);
  };
  const std::string first = render();
  EXPECT_EQ(first, render());
  EXPECT_EQ(first.rfind("level,h,nodes,error_maxnorm,error_l2,runtime_ms\n", 0), 0u);
}

TEST(Experiments, CriteriaRelations) {
  EXPECT_TRUE(at_most("a", 1.0, 1.0).pass);
  EXPECT_FALSE(at_most("a", 1.1, 1.0).pass);
  EXPECT_TRUE(at_least("b", 2.0, 1.0).pass);
  EXPECT_TRUE(equal_to("c", 3.0, 3.0).pass);
  EXPECT_FALSE(equal_to("c", 3.0, 4.0).pass);
}
