#pragma once

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "pacnav/geometry.hpp"
#include "pacnav/rng.hpp"

namespace pacnav {

/// Gaussian relative-localization error. Under line of sight the estimate is
/// ground truth plus N(0, sigma_los^2 I); without it the previous estimate
/// random-walks with N(0, sigma_nlos^2 I) increments.
struct ObservationModel {
  double sigma_los = 0.2;
  double sigma_nlos = 0.5;
};

/// One estimate of another agent's absolute position, in the observer's
/// world frame. Throws Error(kNoPriorEstimate) for an NLoS observation of an
/// agent that was never seen.
Vec2 observe(const Vec2& true_position, const std::optional<Vec2>& prev_estimate, bool has_los,
             const ObservationModel& model, Rng& rng);

/// Agents currently tracked by one observer, with the last step each was in
/// line of sight. Entries expire once k - last_los > k_m.
class NeighborSet {
 public:
  explicit NeighborSet(Step k_m = 30) : k_m_(k_m) {}

  /// Adds agents with LoS (refreshing their timestamp), then drops those
  /// unseen for more than k_m steps.
  void update(const std::map<UavId, bool>& los_flags, Step k);

  bool contains(UavId j) const { return entries_.contains(j); }
  std::optional<Step> last_los(UavId j) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Step k_m() const { return k_m_; }

  /// Members in ascending id order.
  std::vector<UavId> ids() const;

 private:
  std::map<UavId, Step> entries_;
  Step k_m_;
};

/// Bounded, time-stamped estimate sequence of one observed agent, newest
/// first. At most k_p columns; a column is dropped once its age reaches k_p.
class PathHistory {
 public:
  struct Entry {
    Vec2 position;
    Step k = 0;
  };

  explicit PathHistory(Step k_p = 50) : k_p_(k_p) {}

  /// Prepends (estimate, k) if the agent is a neighbor, then ages out old
  /// columns. k must be newer than the newest stored entry.
  void update(const Vec2& estimate, Step k, bool in_neighbors);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  Step k_p() const { return k_p_; }

  /// 0-based; position(0) is the newest estimate.
  const Vec2& position(std::size_t m) const { return entries_[m].position; }
  Step time(std::size_t m) const { return entries_[m].k; }
  const Vec2& newest() const { return entries_.front().position; }
  const Vec2& oldest() const { return entries_.back().position; }
  const std::deque<Entry>& entries() const { return entries_; }

  /// Builds a history directly from positions (newest first) stamped at
  /// k, k-1, k-2, ...
  static PathHistory from_positions(std::vector<Vec2> newest_first, Step k_newest = 0,
                                    Step k_p = 1'000'000);

 private:
  std::deque<Entry> entries_;
  Step k_p_;
};

}  // namespace pacnav
