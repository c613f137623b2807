#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "pacnav/forest.hpp"
#include "pacnav/scenario.hpp"
#include "pacnav/world.hpp"

namespace pacnav {

struct MissionSummary {
  bool completed = false;
  std::optional<Step> completion_step;
  /// Steps actually simulated.
  Step steps = 0;
  /// Minimum true center distance between any two agents over the mission.
  double min_pair_distance = 0.0;
  /// Minimum true distance from any agent center to any tree center.
  double min_tree_distance = 0.0;
  double mean_order = 0.0;
  double terminal_order = 0.0;

  std::optional<double> completion_time(double dt) const {
    if (!completion_step) return std::nullopt;
    return static_cast<double>(*completion_step) * dt;
  }
};

struct MissionLog {
  ScenarioConfig config;
  Forest forest;
  std::vector<StepRecord> records;
  /// Positions after the last step (the state the summary was judged on).
  std::vector<Vec2> final_positions;
  MissionSummary summary;
};

/// Recomputes the summary from the records and final positions.
MissionSummary summarize(const MissionLog& log);

/// Steps until every agent is inside the goal disk or max_steps is reached.
MissionLog run_mission(const ScenarioConfig& config);
MissionLog run_mission(const ScenarioConfig& config, Forest forest);

struct BatchRun {
  std::size_t index = 0;
  std::uint64_t master_seed = 0;
  std::uint64_t forest_seed = 0;
  MissionSummary summary;
};

struct Stat {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

struct BatchSummary {
  ScenarioConfig config;
  std::vector<BatchRun> runs;
  std::size_t completed = 0;
  /// Over completed runs only (count 0 when none completed).
  Stat completion_time;
  Stat min_pair_distance;
  Stat min_tree_distance;
  Stat terminal_order;
};

/// Master seed used for run `index` of a batch started from `base`.
std::uint64_t batch_run_seed(std::uint64_t base, std::size_t index);

/// Independent missions: run i uses master seed base + i and, when given,
/// forest_seeds[i] as its forest seed. `on_run` sees each full log.
BatchSummary run_batch(const ScenarioConfig& config, std::size_t n_runs,
                       const std::vector<std::uint64_t>& forest_seeds = {},
                       const std::function<void(const BatchRun&, const MissionLog&)>& on_run = {});

/// Column names of the per-step time series, in file order.
const std::vector<std::string>& timeseries_columns();

/// Writes timeseries.csv, estimates.csv, pairs.csv, summary.json and
/// forest.json into out_dir (created if needed).
void write_outputs(const MissionLog& log, const std::filesystem::path& out_dir);

/// Writes batch_summary.csv and batch_summary.json into out_dir.
void write_batch_outputs(const BatchSummary& batch, const std::filesystem::path& out_dir);

std::string summary_to_json(const MissionLog& log);

}  // namespace pacnav
