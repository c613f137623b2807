#include "pacnav/controller.hpp"

#include <algorithm>
#include <cmath>

namespace pacnav {

Vec2 nav_informed(const Vec2& a_n, const Vec2& p_i, std::span<const Vec2> neighbor_estimates,
                  const ControlParams& params) {
  double factor = params.v_min;
  if (!neighbor_estimates.empty()) {
    double sum = 0.0;
    for (const Vec2& e : neighbor_estimates) sum += distance(e, p_i);
    const double mean_term = sum / (2.0 * params.r_f * static_cast<double>(neighbor_estimates.size()));
    factor = std::max(params.v_min, 1.0 - mean_term);
  }
  return factor * params.k_n * (a_n - p_i);
}

Vec2 nav_uninformed(const Vec2& a_n, const Vec2& p_i, std::span<const Vec2> neighbor_estimates,
                    const ControlParams& params) {
  Vec2 n = params.k_n * (a_n - p_i);
  for (const Vec2& e : neighbor_estimates) {
    const Vec2 rel = e - p_i;
    const double d2 = squared_norm(rel);
    const double d = std::sqrt(d2);
    if (d < kNormEpsilon) continue;
    const Vec2 parallel = (dot(n, rel) / d2) * rel;
    const Vec2 orthogonal = n - parallel;
    const double scale = std::min(1.0, std::pow(d / params.r_f, params.alpha));
    n = scale * parallel + orthogonal;
  }
  return n;
}

CollisionCandidates collision_candidates(const Vec2& p_i, const Vec2& o_r, double r_o,
                                         double eps_dist) {
  const Vec2 rel = p_i - o_r;
  const double raw = norm(rel);
  CollisionCandidates out;
  out.clamped = raw < eps_dist;
  const double d = std::max(raw, eps_dist);
  // no direction at all when the agent sits on the obstacle; push along +x
  const Vec2 unit = raw >= kNormEpsilon ? rel * (1.0 / raw) : Vec2{1.0, 0.0};
  out.phi = kPi / (2.0 * r_o) * d;
  out.plus = rotate(unit, out.phi);
  out.minus = rotate(unit, -out.phi);
  return out;
}

Vec2 choose_candidate(const CollisionCandidates& cand, const Vec2& u_prev) {
  const auto dp = normalized_dot(cand.plus, u_prev);
  const auto dm = normalized_dot(cand.minus, u_prev);
  if (!dp || !dm) return cand.plus;
  return *dm > *dp ? cand.minus : cand.plus;
}

namespace {

double avoidance_weight(double d, const ControlParams& params) {
  return std::max(0.0, 1.0 / std::max(d, params.eps_dist) - 1.0 / params.r_o);
}

}  // namespace

Vec2 collision_vector(const Vec2& p_i, std::span<const Vec2> obstacles, const Vec2& u_prev,
                      const ControlParams& params) {
  Vec2 sum;
  for (const Vec2& o : obstacles) {
    const double w = avoidance_weight(distance(p_i, o), params);
    if (w <= 0.0) continue;
    const CollisionCandidates cand = collision_candidates(p_i, o, params.r_o, params.eps_dist);
    sum += w * choose_candidate(cand, u_prev);
  }
  return params.k_c * sum;
}

Vec2 repulsive_collision_vector(const Vec2& p_i, std::span<const Vec2> obstacles,
                                const ControlParams& params) {
  Vec2 sum;
  for (const Vec2& o : obstacles) {
    const Vec2 rel = p_i - o;
    const double raw = norm(rel);
    const double w = avoidance_weight(raw, params);
    if (w <= 0.0) continue;
    const Vec2 unit = raw >= kNormEpsilon ? rel * (1.0 / raw) : Vec2{1.0, 0.0};
    sum += w * unit;
  }
  return params.k_c * sum;
}

Vec2 control(const Vec2& n, const Vec2& c, double v_max) {
  const Vec2 u = n + c;
  const double speed = norm(u);
  if (speed > v_max && speed > 0.0) {
    return u * (v_max / speed);
  }
  return u;
}

}  // namespace pacnav
