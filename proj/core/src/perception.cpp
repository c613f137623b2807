#include "pacnav/perception.hpp"

#include <random>

#include "pacnav/error.hpp"

namespace pacnav {

Vec2 observe(const Vec2& true_position, const std::optional<Vec2>& prev_estimate, bool has_los,
             const ObservationModel& model, Rng& rng) {
  const double sigma = has_los ? model.sigma_los : model.sigma_nlos;
  Vec2 base;
  if (has_los) {
    base = true_position;
  } else {
    if (!prev_estimate) {
      throw Error(ErrorCode::kNoPriorEstimate, "NLoS observation without a previous estimate");
    }
    base = *prev_estimate;
  }
  if (sigma <= 0.0) {
    return base;
  }
  std::normal_distribution<double> noise(0.0, sigma);
  const double ex = noise(rng);
  const double ey = noise(rng);
  return {base.x + ex, base.y + ey};
}

void NeighborSet::update(const std::map<UavId, bool>& los_flags, Step k) {
  for (const auto& [j, los] : los_flags) {
    if (los) entries_[j] = k;
  }
  std::erase_if(entries_, [&](const auto& e) { return k - e.second > k_m_; });
}

std::optional<Step> NeighborSet::last_los(UavId j) const {
  const auto it = entries_.find(j);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<UavId> NeighborSet::ids() const {
  std::vector<UavId> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

void PathHistory::update(const Vec2& estimate, Step k, bool in_neighbors) {
  if (!entries_.empty() && k <= entries_.front().k) {
    throw Error(ErrorCode::kInvalidArgument, "path history update must move forward in time");
  }
  if (in_neighbors) {
    entries_.push_front({estimate, k});
  }
  while (!entries_.empty() && k - entries_.back().k >= k_p_) {
    entries_.pop_back();
  }
}

PathHistory PathHistory::from_positions(std::vector<Vec2> newest_first, Step k_newest, Step k_p) {
  PathHistory h(k_p);
  Step k = k_newest;
  for (const Vec2& p : newest_first) {
    h.entries_.push_back({p, k--});
  }
  return h;
}

}  // namespace pacnav
