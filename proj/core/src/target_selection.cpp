#include "pacnav/target_selection.hpp"

#include "pacnav/error.hpp"
#include "pacnav/motion_metrics.hpp"

namespace pacnav {

std::string_view to_string(FsmState s) {
  switch (s) {
    case FsmState::kHold: return "q0";
    case FsmState::kFollow: return "q1";
    case FsmState::kGoal: return "q2";
  }
  return "?";
}

std::string_view to_string(FsmInput x) {
  switch (x) {
    case FsmInput::kAlone: return "Alone";
    case FsmInput::kSwarm: return "Swarm";
    case FsmInput::kGoal: return "Goal";
  }
  return "?";
}

std::vector<UavId> potential_targets(const Vec2& p_i, const Vec2& prev_target,
                                     const HistoryMap& histories, const SelectionParams& params) {
  std::vector<UavId> out;
  for (const auto& [j, h] : histories) {
    if (h.size() < params.min_history) continue;
    if (distance(h.newest(), p_i) < params.r_f) continue;
    // approaching the previous target: following it would not change course
    if (distance(h.newest(), prev_target) < distance(h.oldest(), prev_target)) continue;
    out.push_back(j);
  }
  return out;
}

FsmInput fsm_input(bool informed, std::size_t n_targets) {
  if (informed) return FsmInput::kGoal;
  return n_targets > 0 ? FsmInput::kSwarm : FsmInput::kAlone;
}

FsmState fsm_step(FsmState s, FsmInput x) {
  if (s == FsmState::kGoal || x == FsmInput::kGoal) return FsmState::kGoal;
  return x == FsmInput::kSwarm ? FsmState::kFollow : FsmState::kHold;
}

double target_score(UavId j, const std::vector<UavId>& candidates, const HistoryMap& histories) {
  const PathHistory& hj = histories.at(j);
  double score = path_persistence(hj);
  for (UavId l : candidates) {
    if (l == j) continue;
    score += path_similarity(hj, histories.at(l));
  }
  return score;
}

TargetChoice select_target(const std::vector<UavId>& candidates, const HistoryMap& histories) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptySet, "no potential targets to select from");
  }
  bool have = false;
  TargetChoice best;
  for (UavId j : candidates) {
    const double s = target_score(j, candidates, histories);
    if (!have || s > best.score || (s == best.score && j < best.id)) {
      best = {j, histories.at(j).newest(), s};
      have = true;
    }
  }
  return best;
}

Vec2 resolve_target(FsmState s, const Vec2& p_i, const Vec2& selected, const Vec2& goal) {
  switch (s) {
    case FsmState::kHold: return p_i;
    case FsmState::kFollow: return selected;
    case FsmState::kGoal: return goal;
  }
  return p_i;
}

}  // namespace pacnav
