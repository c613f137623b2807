#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pacnav/error.hpp"
#include "pacnav/scenario.hpp"

using namespace pacnav;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Presets, TableParametersAndCaseRadii) {
  for (const char* n : {"1a", "1b", "2a", "2b"}) {
    const ScenarioConfig c = preset(n);
    EXPECT_DOUBLE_EQ(c.control.r_f, 4.0);
    EXPECT_DOUBLE_EQ(c.control.r_o, 2.5);
    EXPECT_DOUBLE_EQ(c.control.k_c, 1.0);
    EXPECT_DOUBLE_EQ(c.control.k_n, 1.2);
    EXPECT_EQ(c.goal, (Vec2{20, 0}));
    EXPECT_EQ(c.forest.n_trees, 51u);
  }
  EXPECT_DOUBLE_EQ(preset("1a").spawn_radius, 3.0);
  EXPECT_DOUBLE_EQ(preset("1a").goal_radius, 6.0);
  EXPECT_DOUBLE_EQ(preset("2b").spawn_radius, 4.5);
  EXPECT_DOUBLE_EQ(preset("2b").goal_radius, 8.5);
  EXPECT_EQ(preset("1a").informed_ids.size(), 1u);
  EXPECT_EQ(preset("1b").informed_ids.size(), 2u);
  EXPECT_EQ(preset("2a").n_uavs, 6u);
  EXPECT_EQ(preset("2b").informed_ids.size(), 4u);
  EXPECT_EQ(preset("1a-nt").forest.n_trees, 104u);
  const ScenarioConfig real = preset("forest-real");
  EXPECT_EQ(real.n_uavs, 4u);
  EXPECT_EQ(real.informed_ids.size(), 1u);
  EXPECT_EQ(real.goal, (Vec2{0, 40}));
  EXPECT_THROW(preset("3c"), Error);
}

TEST(Presets, EveryPresetValidatesAndRoundTrips) {
  for (const auto& n : preset_names()) {
    const ScenarioConfig c = preset(n);
    EXPECT_NO_THROW(c.validate()) << n;
    const std::string text = config_to_json(c);
    EXPECT_EQ(config_to_json(config_from_json(text)), text) << n;
  }
}

TEST(Presets, ShippedFilesMatchBuiltIns) {
  const char* dir = std::getenv("PACNAV_PRESET_DIR");
  if (dir == nullptr) GTEST_SKIP() << "PACNAV_PRESET_DIR not set";
  for (const auto& n : preset_names()) {
    const auto path = std::filesystem::path(dir) / (n + ".json");
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(slurp(path), config_to_json(preset(n))) << n;
    EXPECT_EQ(config_to_json(load_config(path)), config_to_json(preset(n)));
  }
}

TEST(Config, UnknownKeysAreRejected) {
  EXPECT_THROW(config_from_json(R"({"n_uavs": 3, "speed": 2})"), Error);
  EXPECT_THROW(config_from_json(R"({"control": {"k_n": 1.0, "kn": 1.0}})"), Error);
  EXPECT_THROW(config_from_json(R"([1, 2])"), Error);
}

TEST(Config, MissingKeysKeepDefaults) {
  const ScenarioConfig c = config_from_json(R"({"n_uavs": 4, "informed_ids": [1, 3]})");
  EXPECT_EQ(c.n_uavs, 4u);
  EXPECT_DOUBLE_EQ(c.dt, ScenarioConfig{}.dt);
  EXPECT_TRUE(c.is_informed(3));
  EXPECT_FALSE(c.is_informed(0));
}

TEST(Config, InvariantViolationsAreRejected) {
  EXPECT_THROW(config_from_json(R"({"n_uavs": 2, "informed_ids": [2]})"), Error);
  EXPECT_THROW(config_from_json(R"({"goal_radius": 0})"), Error);
  EXPECT_THROW(config_from_json(R"({"spawn_radius": -1})"), Error);
  EXPECT_THROW(config_from_json(R"({"max_steps": 0})"), Error);
  EXPECT_THROW(config_from_json(R"({"control": {"v_min": 1.5}})"), Error);
  try {
    config_from_json(R"({"max_steps": 0})");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfig);
  }
}

TEST(Config, ForestSeedDefaultsToDerivedValue) {
  ScenarioConfig c = preset("1a");
  c.master_seed = 5;
  const auto derived = c.effective_forest_seed();
  c.master_seed = 6;
  EXPECT_NE(c.effective_forest_seed(), derived);
  c.forest.seed = 99;
  EXPECT_EQ(c.effective_forest_seed(), 99u);
  EXPECT_EQ(c.forest_spec().seed, 99u);
  EXPECT_EQ(c.forest_spec().keep_clear.size(), 2u);
}
