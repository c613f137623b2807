#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "pacnav/error.hpp"
#include "pacnav/forest.hpp"

using namespace pacnav;

namespace {

ForestSpec spec_with(std::size_t n, std::uint64_t seed = 42) {
  ForestSpec s;
  s.seed = seed;
  s.n_trees = n;
  s.keep_clear = {{{-20, 0}, 5.0}, {{20, 0}, 6.0}};
  return s;
}

void expect_invariants(const Forest& f, const ForestSpec& s) {
  ASSERT_EQ(f.trees.size(), s.n_trees);
  for (std::size_t i = 0; i < f.trees.size(); ++i) {
    const Tree& t = f.trees[i];
    EXPECT_TRUE(f.area.contains(t.center));
    EXPECT_DOUBLE_EQ(t.radius, s.tree_radius);
    for (const auto& z : s.keep_clear) EXPECT_GT(distance(t.center, z.center), z.radius);
    for (std::size_t j = i + 1; j < f.trees.size(); ++j) {
      EXPECT_GE(distance(t.center, f.trees[j].center), s.min_spacing);
    }
  }
}

Forest random_forest(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_real_distribution<double> r(0.1, 0.8);
  Forest f;
  f.area = {{0, 0}, {10, 10}};
  for (std::size_t i = 0; i < n; ++i) f.trees.push_back({{u(rng), u(rng)}, r(rng)});
  return f;
}

}  // namespace

TEST(GenerateForest, EmptyForest) { EXPECT_TRUE(generate_forest(spec_with(0)).trees.empty()); }

TEST(GenerateForest, SameSeedSameForest) {
  EXPECT_EQ(generate_forest(spec_with(51)), generate_forest(spec_with(51)));
  EXPECT_NE(generate_forest(spec_with(51, 1)).trees, generate_forest(spec_with(51, 2)).trees);
}

TEST(GenerateForest, TableTreeCountHoldsInvariants) {
  const ForestSpec s = spec_with(104);
  expect_invariants(generate_forest(s), s);
}

TEST(GenerateForest, InvariantsAcrossSeeds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ForestSpec s = spec_with(51, seed);
    expect_invariants(generate_forest(s), s);
  }
}

TEST(GenerateForest, ImpossiblePackingFails) {
  ForestSpec s;
  s.area = {{0, 0}, {5, 5}};
  s.n_trees = 100;
  try {
    generate_forest(s);
    FAIL() << "expected placement failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kPlacementFailure);
  }
}

TEST(Density, FormulaValues) {
  EXPECT_DOUBLE_EQ(forest_density(0, 2.5, 2500), 0.0);
  EXPECT_NEAR(forest_density(51, 2.5, 2500), 0.4006, 1e-4);
  EXPECT_NEAR(forest_density(104, 2.5, 2500), 0.8168, 1e-4);
  EXPECT_EQ(trees_for_density(0.4, 2.5, 2500), 51u);
  EXPECT_EQ(trees_for_density(0.25, 2.5, 40 * 56), 29u);
}

TEST(LineOfSight, Examples) {
  Forest empty;
  EXPECT_TRUE(line_of_sight(empty, {0, 0}, {10, 3}));
  Forest one;
  one.trees = {{{5, 0}, 0.3}};
  EXPECT_FALSE(line_of_sight(one, {0, 0}, {10, 0}));
  EXPECT_TRUE(line_of_sight(one, {0, 1}, {10, 1}));
  EXPECT_FALSE(line_of_sight(one, {0, 1}, {10, 1}, 0.8));
}

TEST(LineOfSight, MatchesDenseSamplingOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1, 11);
  int compared = 0;
  for (int f = 0; f < 20; ++f) {
    const Forest forest = random_forest(rng, 20);
    for (int s = 0; s < 50; ++s) {
      const Vec2 a{u(rng), u(rng)};
      const Vec2 b{u(rng), u(rng)};
      const auto ref = oracle::sampled_los(forest.trees, a, b);
      // a segment grazing a disk closer than the 1 cm sampling step is ambiguous
      if (ref.clear && ref.min_margin < 0.01) continue;
      ++compared;
      EXPECT_EQ(line_of_sight(forest, a, b), ref.clear) << a << " -> " << b;
    }
  }
  EXPECT_GT(compared, 950);
}

TEST(LineOfSight, Symmetric) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1, 11);
  for (int f = 0; f < 10; ++f) {
    const Forest forest = random_forest(rng, 20);
    for (int s = 0; s < 100; ++s) {
      const Vec2 a{u(rng), u(rng)};
      const Vec2 b{u(rng), u(rng)};
      EXPECT_EQ(line_of_sight(forest, a, b), line_of_sight(forest, b, a));
    }
  }
}

TEST(SenseObstacles, Examples) {
  Forest f;
  f.area = {{0, 0}, {10, 10}};
  f.trees = {{{3, 4}, 0.3}, {{9, 9}, 0.3}};
  EXPECT_TRUE(sense_obstacles(f, {0, 0}, 4.9).empty());
  EXPECT_EQ(sense_obstacles(f, {0, 0}, 5.0), (std::vector<std::size_t>{0}));
  EXPECT_EQ(sense_obstacles(f, {0, 0}, std::hypot(10.0, 10.0)), (std::vector<std::size_t>{0, 1}));
}

TEST(SenseObstacles, MonotoneInRadiusAndMatchesScan) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0, 10);
  for (int f = 0; f < 100; ++f) {
    const Forest forest = random_forest(rng, 30);
    const Vec2 p{u(rng), u(rng)};
    std::vector<std::size_t> prev;
    for (double r = 0.0; r <= 15.0; r += 0.5) {
      const auto got = sense_obstacles(forest, p, r);
      std::vector<std::size_t> scan;
      for (std::size_t i = 0; i < forest.trees.size(); ++i) {
        if (distance(forest.trees[i].center, p) <= r) scan.push_back(i);
      }
      EXPECT_EQ(got, scan);
      EXPECT_TRUE(std::includes(got.begin(), got.end(), prev.begin(), prev.end()));
      prev = got;
    }
  }
}

TEST(NearbyObstacles, Examples) {
  const double r_o = 2.5;
  Forest f;
  EXPECT_TRUE(nearby_obstacles(f, {}, {0, 0}, r_o).empty());
  f.trees = {{{r_o - 1e-6, 0}, 0.3}, {{r_o, 0.0}, 0.3}};
  EXPECT_EQ(nearby_obstacles(f, {}, {0, 0}, r_o), (std::vector<Vec2>{{r_o - 1e-6, 0}}));
  f.trees = {{{0, r_o / 2}, 0.3}};
  const std::vector<Vec2> uavs{{r_o / 2, 0}, {10, 0}};
  EXPECT_EQ(nearby_obstacles(f, uavs, {0, 0}, r_o), (std::vector<Vec2>{{0, r_o / 2}, {r_o / 2, 0}}));
}

TEST(Clearance, SurfaceDistance) {
  Forest f;
  EXPECT_TRUE(std::isinf(clearance_to_trees(f, {0, 0})));
  f.trees = {{{3, 4}, 0.5}};
  EXPECT_DOUBLE_EQ(clearance_to_trees(f, {0, 0}), 4.5);
}

TEST(ForestJson, RoundTripIsExact) {
  const Forest f = generate_forest(spec_with(51, 3));
  EXPECT_EQ(forest_from_json(forest_to_json(f)), f);
  const auto path = std::filesystem::temp_directory_path() / "pacnav_forest_rt.json";
  save_forest(f, path);
  EXPECT_EQ(load_forest(path), f);
  std::filesystem::remove(path);
}

TEST(ForestJson, RejectsUnknownKeysAndMissingFiles) {
  EXPECT_THROW(forest_from_json(R"({"seed":1,"bogus":2})"), Error);
  EXPECT_THROW(forest_from_json("not json"), Error);
  EXPECT_THROW(load_forest("/nonexistent/forest.json"), Error);
}
