#include <gtest/gtest.h>

#include <random>

#include "pacnav/controller.hpp"

using namespace pacnav;

namespace {

const ControlParams kP{};

void expect_near(const Vec2& a, const Vec2& b, double tol = 1e-12) {
  EXPECT_NEAR(a.x, b.x, tol) << a << " vs " << b;
  EXPECT_NEAR(a.y, b.y, tol) << a << " vs " << b;
}

Vec2 mirror(const Vec2& v) { return {v.x, -v.y}; }

}  // namespace

TEST(NavInformed, FactorCases) {
  const Vec2 a{3, 1}, p{1, 0};
  const std::vector<Vec2> on_top{p, p};
  expect_near(nav_informed(a, p, on_top, kP), kP.k_n * (a - p));
  const std::vector<Vec2> far{p + Vec2{2 * kP.r_f, 0}, p + Vec2{0, -2 * kP.r_f}};
  expect_near(nav_informed(a, p, far, kP), kP.v_min * kP.k_n * (a - p));
  expect_near(nav_informed(a, p, {}, kP), kP.v_min * kP.k_n * (a - p));
  const std::vector<Vec2> mid{p + Vec2{kP.r_f, 0}};
  expect_near(nav_informed(a, p, mid, kP), 0.5 * kP.k_n * (a - p));
}

TEST(NavUninformed, ScalingCases) {
  const Vec2 a{2, 0}, p{0, 0};
  const Vec2 base = kP.k_n * (a - p);
  expect_near(nav_uninformed(a, p, {}, kP), base);
  const std::vector<Vec2> at_rf{{kP.r_f, 0}};
  expect_near(nav_uninformed(a, p, at_rf, kP), base);
  // neighbor dead ahead at r_f / 2: parallel part scaled by 1/4
  const Vec2 oblique{2, 1};
  const Vec2 b = kP.k_n * oblique;
  const std::vector<Vec2> ahead{{kP.r_f / 2, 0}};
  expect_near(nav_uninformed(oblique, p, ahead, kP), {b.x / 4, b.y});
  // a neighbor on top of the agent has no direction and is skipped
  const std::vector<Vec2> coincident{p};
  expect_near(nav_uninformed(a, p, coincident, kP), base);
}

TEST(NavUninformed, NeverGrowsTheCommand) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int t = 0; t < 2000; ++t) {
    const Vec2 a{u(rng), u(rng)};
    std::vector<Vec2> nb(rng() % 4);
    for (auto& q : nb) q = {u(rng), u(rng)};
    EXPECT_LE(norm(nav_uninformed(a, {0, 0}, nb, kP)), norm(kP.k_n * a) + 1e-9);
  }
}

TEST(CollisionCandidates, Cases) {
  const double r_o = 2.5;
  auto c = collision_candidates({r_o, 0}, {0, 0}, r_o);
  EXPECT_NEAR(c.phi, kPi / 2, 1e-15);
  expect_near(c.plus, {0, 1});
  expect_near(c.minus, {0, -1});

  c = collision_candidates({0.05, 0}, {0, 0}, r_o);
  EXPECT_NEAR(c.phi, kPi / 2 / r_o * 0.05, 1e-15);
  expect_near(c.plus, {1, 0}, 0.04);
  expect_near(c.minus, {1, 0}, 0.04);

  c = collision_candidates({r_o / 2, 0}, {0, 0}, r_o);
  EXPECT_NEAR(c.phi, kPi / 4, 1e-15);
  expect_near(c.plus, {std::cos(kPi / 4), std::sin(kPi / 4)});
}

TEST(CollisionCandidates, ClampAndDegenerateDirection) {
  auto c = collision_candidates({0.01, 0}, {0, 0}, 2.5, 0.05);
  EXPECT_TRUE(c.clamped);
  EXPECT_NEAR(c.phi, kPi / 5 * 0.05, 1e-15);
  c = collision_candidates({0, 0}, {0, 0}, 2.5, 0.05);
  EXPECT_TRUE(c.clamped);
  EXPECT_TRUE(is_finite(c.plus));
  EXPECT_NEAR(norm(c.plus), 1.0, 1e-12);
}

TEST(ChooseCandidate, PicksCloserInAngle) {
  const auto c = collision_candidates({1, 0}, {0, 0}, 2.5);
  EXPECT_EQ(choose_candidate(c, {0, 1}), c.plus);
  EXPECT_EQ(choose_candidate(c, {0, -1}), c.minus);
  EXPECT_EQ(choose_candidate(c, {0, 0}), c.plus);
  EXPECT_EQ(choose_candidate(c, {1, 0}), c.plus);
}

TEST(CollisionVector, WeightsAndBoundary) {
  const std::vector<Vec2> at_ro{{2.5, 0}};
  expect_near(collision_vector({0, 0}, at_ro, {1, 0}, kP), {0, 0});
  const std::vector<Vec2> one{{1, 0}};
  const Vec2 c = collision_vector({0, 0}, one, {1, 0}, kP);
  EXPECT_NEAR(norm(c), kP.k_c * (1.0 - 1.0 / 2.5), 1e-12);
  const Vec2 r = repulsive_collision_vector({0, 0}, one, kP);
  expect_near(r, {-(1.0 - 1.0 / 2.5), 0});
}

// Two obstacles mirrored about the direction of travel. The repulsive scheme
// pushes straight back; the rotated candidates keep most of the push
// sideways so far less of it opposes forward motion.
TEST(CollisionVector, SymmetricPairOpposesLessThanRepulsion) {
  const std::vector<Vec2> pair{{1.0, 0.6}, {1.0, -0.6}};
  const Vec2 c = collision_vector({0, 0}, pair, {1, 0}, kP);
  const Vec2 r = repulsive_collision_vector({0, 0}, pair, kP);
  EXPECT_NEAR(r.y, 0.0, 1e-12);
  EXPECT_NEAR(c.y, 0.0, 1e-12);
  EXPECT_LT(r.x, 0.0);
  EXPECT_GT(c.x, r.x);
  EXPECT_LT(std::abs(c.x), 0.5 * std::abs(r.x));
}

TEST(CollisionVector, MirrorSymmetry) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.4, 2.4);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Vec2> obs(1 + rng() % 4);
    for (auto& o : obs) o = {u(rng), u(rng)};
    const Vec2 prev{u(rng), u(rng)};
    // skip draws where a candidate pair is (nearly) tied, since the tie rule is not mirror-symmetric
    bool near_tie = false;
    for (const auto& o : obs) {
      const auto cand = collision_candidates({0, 0}, o, kP.r_o, kP.eps_dist);
      const auto dp = normalized_dot(cand.plus, prev);
      const auto dm = normalized_dot(cand.minus, prev);
      if (dp && dm && std::abs(*dp - *dm) < 1e-9) near_tie = true;
    }
    if (near_tie) continue;
    std::vector<Vec2> m;
    for (const auto& o : obs) m.push_back(mirror(o));
    expect_near(collision_vector({0, 0}, m, mirror(prev), kP),
                mirror(collision_vector({0, 0}, obs, prev, kP)), 1e-9);
  }
}

TEST(CollisionVector, FiniteForAnyPlacement) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 5000; ++t) {
    std::vector<Vec2> obs(rng() % 5);
    for (auto& o : obs) o = {u(rng), u(rng)};
    if (!obs.empty() && t % 10 == 0) obs[0] = {0, 0};
    const Vec2 c = collision_vector({0, 0}, obs, {u(rng), u(rng)}, kP);
    EXPECT_TRUE(is_finite(c));
    EXPECT_LE(norm(c), kP.k_c * obs.size() * (1.0 / kP.eps_dist) + 1e-9);
  }
}

TEST(Control, Clamp) {
  expect_near(control({1, 0}, {0, 0}, 2.0), {1, 0});
  expect_near(control({1, 2}, {-1, -2}, 2.0), {0, 0});
  const Vec2 u = control({3, 4}, {3, 4}, 5.0);
  EXPECT_NEAR(norm(u), 5.0, 1e-12);
  expect_near(u * (1.0 / norm(u)), {0.6, 0.8});
}
