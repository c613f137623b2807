#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "pacnav/geometry.hpp"
#include "pacnav/perception.hpp"

namespace pacnav {

/// Target-selection state: hold position, follow a neighbor, or head for the goal.
enum class FsmState { kHold = 0, kFollow = 1, kGoal = 2 };

enum class FsmInput { kAlone, kSwarm, kGoal };

std::string_view to_string(FsmState s);
std::string_view to_string(FsmInput x);

struct SelectionParams {
  /// Neighbors closer than this are not eligible targets.
  double r_f = 4.0;
  std::size_t min_history = 3;
};

using HistoryMap = std::map<UavId, PathHistory>;

/// Neighbors eligible as targets: far enough away, not approaching the
/// previous target, and with enough history to score. Ascending id order.
std::vector<UavId> potential_targets(const Vec2& p_i, const Vec2& prev_target,
                                     const HistoryMap& histories, const SelectionParams& params);

FsmInput fsm_input(bool informed, std::size_t n_targets);
FsmState fsm_step(FsmState s, FsmInput x);

struct TargetChoice {
  UavId id;
  /// Newest estimate of the chosen agent.
  Vec2 position;
  double score = 0.0;
};

/// Selection score of one candidate: its persistence plus its similarity to
/// every other candidate.
double target_score(UavId j, const std::vector<UavId>& candidates, const HistoryMap& histories);

/// Highest-scoring candidate, lowest id on ties. Throws Error(kEmptySet) for
/// an empty candidate list.
TargetChoice select_target(const std::vector<UavId>& candidates, const HistoryMap& histories);

/// Hold -> own position, follow -> selected estimate, goal -> goal.
Vec2 resolve_target(FsmState s, const Vec2& p_i, const Vec2& selected, const Vec2& goal);

}  // namespace pacnav
