#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pacnav/controller.hpp"
#include "pacnav/forest.hpp"
#include "pacnav/geometry.hpp"
#include "pacnav/perception.hpp"

namespace pacnav {

struct ForestParams {
  /// Empty: derived from the mission's master seed.
  std::optional<std::uint64_t> seed;
  Area area{{-25.0, -25.0}, {50.0, 50.0}};
  std::size_t n_trees = 51;
  double tree_radius = 0.3;
  double min_spacing = 1.8;
  /// Added to the spawn radius to size the tree-free zone around the spawn disk.
  double spawn_clearance = 2.0;
};

struct PerceptionParams {
  ObservationModel noise;
  Step k_m = 30;
  Step k_p = 50;
  /// Radius within which trees are revealed to the agent's map.
  double sensing_radius = 8.0;
  double los_inflation = 0.0;
  /// Let UAV bodies block line of sight as well as trees.
  bool uav_occlusion = false;
};

struct PlannerParams {
  double cell_size = 0.5;
  /// Grows mapped trees by this much; defaults to the UAV radius.
  double inflation = 0.25;
  /// Map extends this far beyond the forest area on every side.
  double map_margin = 5.0;
};

struct ScenarioConfig {
  std::string name = "custom";
  std::size_t n_uavs = 3;
  std::vector<std::uint32_t> informed_ids{0};
  Vec2 goal{20.0, 0.0};
  Vec2 spawn_center{-20.0, 0.0};
  double spawn_radius = 3.0;
  double goal_radius = 6.0;
  double uav_radius = 0.25;
  /// Extra gap on top of 2 * uav_radius between spawned agents.
  double spawn_margin = 0.3;
  ForestParams forest;
  PerceptionParams perception;
  PlannerParams planner;
  ControlParams control;
  double dt = 0.1;
  Step max_steps = 6000;
  std::uint64_t master_seed = 0;

  bool is_informed(std::uint32_t id) const;
  /// Forest seed in effect (explicit or derived from master_seed).
  std::uint64_t effective_forest_seed() const;
  ForestSpec forest_spec() const;

  /// Throws Error(kConfig) on any violated invariant.
  void validate() const;
};

/// Names accepted by preset(): 1a, 1b, 2a, 2b, forest-real, and the
/// tree-count-matched variants 1a-nt, 1b-nt, 2a-nt, 2b-nt.
std::vector<std::string> preset_names();
ScenarioConfig preset(std::string_view name);

/// Structured text (JSON). Unknown keys are rejected; missing keys keep
/// their defaults.
std::string config_to_json(const ScenarioConfig& config);
ScenarioConfig config_from_json(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

}  // namespace pacnav
