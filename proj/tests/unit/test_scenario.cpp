#include <gtest/gtest.h>

#include <filesystem>
#include <string>

#include "aclab/scenario.hpp"

namespace {

using namespace aclab;

const std::string kPlanar = R"({
  "name": "p", "dimension": 1, "extent": 1.0, "resolution": 128, "boundary": "reflective",
  "shape": {"type": "half_space", "point": [0.5], "normal": [1.0]},
  "epsilons": [0.05], "steps": 100, "snapshots": 4,
  "checks": {"energy_dissipation": {}}
})";

std::string with(const std::string& from, const std::string& to) {
  std::string text = kPlanar;
  text.replace(text.find(from), from.size(), to);
  return text;
}

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

TEST(Scenario, MinimalConfigParses) {
  const auto c = parse_scenario(kPlanar);
  EXPECT_EQ(c.dim, 1);
  EXPECT_EQ(c.checks.size(), 1u);
  EXPECT_EQ(c.checks[0].param("slack"), 0.01);
  EXPECT_EQ(c.output, std::filesystem::path("out/p"));
}

TEST(Scenario, BundledFilesParse) {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ACLAB_SCENARIO_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_scenario(entry.path())) << entry.path();
    ++count;
  }
  EXPECT_GE(count, 5);
}

TEST(Scenario, RejectsUnknownKeysChecksAndParams) {
  EXPECT_NE(error_of(with("\"steps\"", "\"stepz\"")), "");
  EXPECT_NE(error_of(with("\"energy_dissipation\": {}", "\"energy_dissapation\": {}")), "");
  EXPECT_NE(error_of(with("\"energy_dissipation\": {}", "\"energy_dissipation\": {\"slak\": 1}")), "");
}

TEST(Scenario, EpsilonBelowTwoCellsNamesTheRatio) {
  const auto msg = error_of(with("\"epsilons\": [0.05]", "\"epsilons\": [0.01]"));
  EXPECT_NE(msg.find("eps/h"), std::string::npos) << msg;
  EXPECT_NE(msg.find("1.28"), std::string::npos) << msg;
}

TEST(Scenario, SweepChecksNeedThreeEpsilons) {
  const auto msg = error_of(with("\"energy_dissipation\": {}", "\"discrepancy_decay\": {}"));
  EXPECT_NE(msg, "");
}

TEST(Scenario, HorizonMustBeGivenOnce) {
  EXPECT_NE(error_of(with("\"steps\": 100", "\"steps\": 100, \"t_end\": 0.1")), "");
  EXPECT_NE(error_of(with("\"steps\": 100,", "")), "");
}

TEST(Scenario, MatchedScalingKeepsRatio) {
  const auto c = load_scenario(std::filesystem::path(ACLAB_SCENARIO_DIR) / "shrinking-circle-2d.json");
  ASSERT_TRUE(c.matched_scaling);
  ASSERT_EQ(c.epsilons.size(), 3u);
  EXPECT_GT(c.epsilons[0], c.epsilons[1]);
  EXPECT_EQ(c.grid_for(0.04).resolution(0), 256);
  EXPECT_EQ(c.grid_for(0.02).resolution(0), 512);
  EXPECT_EQ(c.grid_for(0.01).resolution(0), 1024);
}

TEST(Scenario, RegistryNamesAreUnique) {
  const auto& reg = check_registry();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    for (std::size_t j = i + 1; j < reg.size(); ++j) EXPECT_NE(reg[i].name, reg[j].name);
  }
  EXPECT_THROW(find_check("nope"), ConfigError);
}

}  // namespace
