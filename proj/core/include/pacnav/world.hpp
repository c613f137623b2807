#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "pacnav/forest.hpp"
#include "pacnav/geometry.hpp"
#include "pacnav/grid_planner.hpp"
#include "pacnav/perception.hpp"
#include "pacnav/rng.hpp"
#include "pacnav/scenario.hpp"
#include "pacnav/target_selection.hpp"

namespace pacnav {

/// Everything one agent knows and remembers. Only the owning agent reads it
/// during a step.
struct AgentState {
  UavId id;
  bool informed = false;
  Vec2 position;
  /// Command applied during the last step (zero before the first step).
  Vec2 velocity;
  FsmState fsm = FsmState::kHold;
  Vec2 prev_target;
  NeighborSet neighbors;
  HistoryMap histories;
  /// Latest estimate of every agent in `neighbors`.
  std::map<UavId, Vec2> estimates;
  OccupancyGrid grid;
};

struct EstimateRecord {
  UavId observer;
  UavId observed;
  Vec2 estimate;
  bool los = false;
};

/// What happened during one step, evaluated on the state at step k before
/// the agents moved.
struct StepRecord {
  Step k = 0;
  std::vector<Vec2> positions;
  std::vector<Vec2> velocities;
  std::vector<FsmState> fsm;
  /// Followed agent for agents in the follow state.
  std::vector<std::optional<UavId>> target_ids;
  std::vector<Vec2> targets;
  std::vector<Vec2> nav;
  std::vector<Vec2> coll;
  std::vector<EstimateRecord> estimates;
  /// Alignment of the commanded velocities; 0 for single-agent missions.
  double order = 0.0;
  /// True distances for pairs (i, j), i < j, in row-major order.
  std::vector<double> pair_distances;
  /// Per agent: distance from its center to the nearest tree center.
  std::vector<double> tree_distances;
};

class World {
 public:
  World(ScenarioConfig config, Forest forest, std::vector<Vec2> spawn);

  const ScenarioConfig& config() const { return config_; }
  const Forest& forest() const { return forest_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  Step k() const { return k_; }

  bool all_in_goal() const;

  /// One synchronous update: every agent senses, estimates, selects a target
  /// and computes its command from the frozen state at k; then all move.
  StepRecord step();

 private:
  bool has_los(std::size_t i, std::size_t j) const;

  ScenarioConfig config_;
  Forest forest_;
  std::vector<AgentState> agents_;
  std::vector<Rng> pair_rngs_;
  AstarPlanner planner_;
  Step k_ = 0;
};

/// Uniform positions in the spawn disk with pairwise spacing of at least
/// 2 * uav_radius + spawn_margin and clear of tree bodies. Throws
/// Error(kSpawnInfeasible) after 1e5 rejected draws.
std::vector<Vec2> spawn(const ScenarioConfig& config, const Forest& forest, Rng& rng);

/// Forest and spawn drawn from the config's seeds.
World make_world(const ScenarioConfig& config);
World make_world(const ScenarioConfig& config, Forest forest);

}  // namespace pacnav
