#pragma once

#include <span>

#include "pacnav/geometry.hpp"

namespace pacnav {

struct ControlParams {
  /// Navigation gain (1/s).
  double k_n = 1.2;
  /// Collision gain.
  double k_c = 1.0;
  /// Minimum normalized speed of an informed agent, in (0, 1).
  double v_min = 0.3;
  /// Rate of the proximity slow-down for uninformed agents.
  double alpha = 2.0;
  /// Proximity radius (m).
  double r_f = 4.0;
  /// Obstacle reaction radius (m).
  double r_o = 2.5;
  /// Speed clamp (m/s).
  double v_max = 2.0;
  /// Obstacle distances below this are clamped to it.
  double eps_dist = 0.05;
};

/// Navigation vector of an informed agent toward waypoint a_n, slowed down
/// as the neighbors' mean distance grows. With no neighbors the speed factor
/// is v_min.
Vec2 nav_informed(const Vec2& a_n, const Vec2& p_i, std::span<const Vec2> neighbor_estimates,
                  const ControlParams& params);

/// Navigation vector of an uninformed agent. For each neighbor, in the given
/// order, the component toward it is scaled by min(1, (d / r_f)^alpha) while
/// the orthogonal remainder is kept. Neighbors closer than kNormEpsilon are
/// skipped.
Vec2 nav_uninformed(const Vec2& a_n, const Vec2& p_i, std::span<const Vec2> neighbor_estimates,
                    const ControlParams& params);

struct CollisionCandidates {
  Vec2 plus;
  Vec2 minus;
  double phi = 0.0;
  /// Distance was below eps_dist and got clamped.
  bool clamped = false;
};

/// The two unit avoidance directions for an obstacle: the away-from-obstacle
/// direction rotated by +/- phi, with phi = pi / (2 r_o) * distance.
CollisionCandidates collision_candidates(const Vec2& p_i, const Vec2& o_r, double r_o,
                                         double eps_dist = 0.05);

/// Avoidance direction for one obstacle: whichever candidate is closer in
/// angle to the previous command, plus on ties or a zero previous command.
Vec2 choose_candidate(const CollisionCandidates& cand, const Vec2& u_prev);

/// Superposed avoidance vector over all obstacles, each weighted by
/// max(0, 1/d - 1/r_o).
Vec2 collision_vector(const Vec2& p_i, std::span<const Vec2> obstacles, const Vec2& u_prev,
                      const ControlParams& params);

/// Reference purely repulsive scheme: same weights, but each term points
/// straight away from its obstacle. Used to compare deadlock behavior.
Vec2 repulsive_collision_vector(const Vec2& p_i, std::span<const Vec2> obstacles,
                                const ControlParams& params);

/// u = n + c, norm-clamped to v_max.
Vec2 control(const Vec2& n, const Vec2& c, double v_max);

}  // namespace pacnav
