#include "pacnav/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "pacnav/controller.hpp"
#include "pacnav/error.hpp"
#include "pacnav/motion_metrics.hpp"

namespace pacnav {

namespace {

constexpr std::size_t kSpawnAttemptBudget = 100'000;

}  // namespace

std::vector<Vec2> spawn(const ScenarioConfig& config, const Forest& forest, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double spacing = 2.0 * config.uav_radius + config.spawn_margin;
  std::vector<Vec2> out;
  std::size_t attempts = 0;
  while (out.size() < config.n_uavs) {
    if (attempts++ >= kSpawnAttemptBudget) {
      throw Error(ErrorCode::kSpawnInfeasible,
                  "placed " + std::to_string(out.size()) + " of " +
                      std::to_string(config.n_uavs) + " agents in the spawn disk");
    }
    const double r = config.spawn_radius * std::sqrt(unit(rng));
    const double theta = 2.0 * kPi * unit(rng);
    const Vec2 p = config.spawn_center + Vec2{r * std::cos(theta), r * std::sin(theta)};
    const bool crowded = std::any_of(out.begin(), out.end(),
                                     [&](const Vec2& q) { return distance(p, q) < spacing; });
    if (crowded) continue;
    if (clearance_to_trees(forest, p) < config.uav_radius) continue;
    out.push_back(p);
  }
  return out;
}

World::World(ScenarioConfig config, Forest forest, std::vector<Vec2> positions)
    : config_(std::move(config)), forest_(std::move(forest)) {
  config_.validate();
  if (positions.size() != config_.n_uavs) {
    throw Error(ErrorCode::kInvalidArgument, "spawn position count does not match n_uavs");
  }
  const OccupancyGrid blank =
      OccupancyGrid::covering(forest_.area, config_.planner.cell_size, config_.planner.map_margin);
  agents_.reserve(config_.n_uavs);
  for (std::uint32_t i = 0; i < config_.n_uavs; ++i) {
    AgentState a{.id = UavId{i},
                 .informed = config_.is_informed(i),
                 .position = positions[i],
                 .velocity = {},
                 .fsm = FsmState::kHold,
                 .prev_target = positions[i],
                 .neighbors = NeighborSet(config_.perception.k_m),
                 .histories = {},
                 .estimates = {},
                 .grid = blank};
    agents_.push_back(std::move(a));
  }
  const std::size_t n = config_.n_uavs;
  pair_rngs_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      pair_rngs_.push_back(make_rng(config_.master_seed, Stream::kObservation, i, j));
    }
  }
}

bool World::all_in_goal() const {
  return std::all_of(agents_.begin(), agents_.end(), [&](const AgentState& a) {
    return distance(a.position, config_.goal) <= config_.goal_radius;
  });
}

bool World::has_los(std::size_t i, std::size_t j) const {
  const Vec2& a = agents_[i].position;
  const Vec2& b = agents_[j].position;
  if (!line_of_sight(forest_, a, b, config_.perception.los_inflation)) return false;
  if (!config_.perception.uav_occlusion) return true;
  for (std::size_t m = 0; m < agents_.size(); ++m) {
    if (m == i || m == j) continue;
    const Disk body{agents_[m].position, config_.uav_radius};
    if (!segment_clear(std::span<const Disk>(&body, 1), a, b)) return false;
  }
  return true;
}

StepRecord World::step() {
  const std::size_t n = agents_.size();
  const PerceptionParams& perc = config_.perception;
  const ControlParams& ctl = config_.control;
  const SelectionParams sel{.r_f = ctl.r_f, .min_history = 3};

  StepRecord rec;
  rec.k = k_;
  rec.positions.reserve(n);
  for (const AgentState& a : agents_) rec.positions.push_back(a.position);
  rec.velocities.resize(n);
  rec.fsm.resize(n);
  rec.target_ids.resize(n);
  rec.targets.resize(n);
  rec.nav.resize(n);
  rec.coll.resize(n);
  rec.tree_distances.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      rec.pair_distances.push_back(distance(rec.positions[i], rec.positions[j]));
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Tree& t : forest_.trees) best = std::min(best, distance(t.center, rec.positions[i]));
    rec.tree_distances[i] = best;
  }

  std::vector<Tree> sensed;
  for (std::size_t i = 0; i < n; ++i) {
    AgentState& a = agents_[i];
    const Vec2 p_i = a.position;

    // map the trees within sensing range; the agent's own cell stays free
    sensed.clear();
    for (std::size_t t : sense_obstacles(forest_, p_i, perc.sensing_radius)) {
      sensed.push_back(forest_.trees[t]);
    }
    const Cell own = a.grid.cell_at(p_i);
    update_grid(a.grid, sensed, config_.planner.inflation, std::span<const Cell>(&own, 1));

    // observe every tracked agent and every agent newly in sight
    std::map<UavId, bool> los_flags;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const UavId jid{static_cast<std::uint32_t>(j)};
      const bool los = has_los(i, j);
      los_flags[jid] = los;
      const auto prev = a.estimates.find(jid);
      if (!los && prev == a.estimates.end()) continue;
      const std::optional<Vec2> prior =
          prev == a.estimates.end() ? std::nullopt : std::optional<Vec2>(prev->second);
      const Vec2 est = observe(rec.positions[j], prior, los, perc.noise, pair_rngs_[i * n + j]);
      a.estimates[jid] = est;
      rec.estimates.push_back({a.id, jid, est, los});
    }

    a.neighbors.update(los_flags, k_);
    std::erase_if(a.estimates, [&](const auto& e) { return !a.neighbors.contains(e.first); });

    for (const auto& [jid, est] : a.estimates) {
      auto it = a.histories.try_emplace(jid, PathHistory(perc.k_p)).first;
      it->second.update(est, k_, true);
    }
    for (auto it = a.histories.begin(); it != a.histories.end();) {
      if (!a.neighbors.contains(it->first)) {
        it->second.update({}, k_, false);
        if (it->second.empty()) {
          it = a.histories.erase(it);
          continue;
        }
      }
      ++it;
    }

    // target selection over the current neighbors' histories
    HistoryMap active;
    for (const auto& [jid, h] : a.histories) {
      if (a.neighbors.contains(jid)) active.emplace(jid, h);
    }
    const std::vector<UavId> candidates = potential_targets(p_i, a.prev_target, active, sel);
    a.fsm = fsm_step(a.fsm, fsm_input(a.informed, candidates.size()));
    Vec2 selected = p_i;
    if (a.fsm == FsmState::kFollow) {
      const TargetChoice choice = select_target(candidates, active);
      selected = choice.position;
      rec.target_ids[i] = choice.id;
    }
    const Vec2 d = resolve_target(a.fsm, p_i, selected, config_.goal);

    // next waypoint on the shortest known-free path; holding needs no plan
    Vec2 a_n = p_i;
    if (a.fsm != FsmState::kHold) {
      const Cell start = a.grid.clamp(own);
      if (auto path = planner_.plan(a.grid, start, a.grid.cell_at(d))) {
        a_n = next_waypoint(*path, p_i);
      }
    }

    std::vector<Vec2> neighbor_estimates;
    neighbor_estimates.reserve(a.estimates.size());
    for (const auto& [jid, est] : a.estimates) neighbor_estimates.push_back(est);

    const Vec2 nav = a.informed ? nav_informed(a_n, p_i, neighbor_estimates, ctl)
                                : nav_uninformed(a_n, p_i, neighbor_estimates, ctl);
    const std::vector<Vec2> obstacles = nearby_obstacles(forest_, neighbor_estimates, p_i, ctl.r_o);
    const Vec2 coll = collision_vector(p_i, obstacles, a.velocity, ctl);
    const Vec2 u = control(nav, coll, ctl.v_max);

    a.prev_target = d;
    rec.velocities[i] = u;
    rec.fsm[i] = a.fsm;
    rec.targets[i] = d;
    rec.nav[i] = nav;
    rec.coll[i] = coll;
  }

  rec.order = n >= 2 ? order_metric(rec.velocities) : 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    agents_[i].velocity = rec.velocities[i];
    agents_[i].position += rec.velocities[i] * config_.dt;
  }
  ++k_;
  return rec;
}

World make_world(const ScenarioConfig& config, Forest forest) {
  config.validate();
  Rng rng = make_rng(config.master_seed, Stream::kSpawn);
  std::vector<Vec2> positions = spawn(config, forest, rng);
  return World(config, std::move(forest), std::move(positions));
}

World make_world(const ScenarioConfig& config) {
  config.validate();
  return make_world(config, generate_forest(config.forest_spec()));
}

}  // namespace pacnav
