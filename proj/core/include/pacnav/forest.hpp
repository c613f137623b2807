#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "pacnav/geometry.hpp"

namespace pacnav {

struct Disk {
  Vec2 center;
  double radius = 0.0;

  friend bool operator==(const Disk&, const Disk&) = default;
};

using Tree = Disk;
using KeepClearZone = Disk;

/// Axis-aligned rectangle [min, min + size].
struct Area {
  Vec2 min;
  Vec2 size;

  double width() const { return size.x; }
  double height() const { return size.y; }
  double extent() const { return size.x * size.y; }
  Vec2 max() const { return min + size; }
  bool contains(const Vec2& p) const;

  friend bool operator==(const Area&, const Area&) = default;
};

/// Immutable after generation; safe to share between agents.
struct Forest {
  std::vector<Tree> trees;
  Area area;
  std::uint64_t seed = 0;
  std::vector<KeepClearZone> keep_clear;

  friend bool operator==(const Forest&, const Forest&) = default;
};

struct ForestSpec {
  std::uint64_t seed = 0;
  Area area{{-25.0, -25.0}, {50.0, 50.0}};
  std::size_t n_trees = 0;
  double tree_radius = 0.3;
  /// Minimum center-to-center spacing; defaults to 2 * tree_radius + 1.2.
  double min_spacing = 1.8;
  std::vector<KeepClearZone> keep_clear;
};

inline constexpr std::size_t kForestAttemptBudget = 1'000'000;

/// Rejection-samples tree centers uniformly in the area. Throws
/// Error(kPlacementFailure) once kForestAttemptBudget draws are spent.
Forest generate_forest(const ForestSpec& spec);

/// Clutter measure n_trees * pi * r^2 / area.
double forest_density(std::size_t n_trees, double radius, double area);

/// Number of trees giving `rho` for the given reaction radius and area
/// (rounded to nearest).
std::size_t trees_for_density(double rho, double radius, double area);

/// True when the closed segment a-b misses every disk. Disks are grown by
/// `inflation`.
bool segment_clear(std::span<const Disk> disks, const Vec2& a, const Vec2& b,
                   double inflation = 0.0);

/// Tree-only line of sight between two points.
bool line_of_sight(const Forest& forest, const Vec2& a, const Vec2& b,
                   double inflation = 0.0);

/// Indices of trees whose centers lie within r_sense of p, ascending.
std::vector<std::size_t> sense_obstacles(const Forest& forest, const Vec2& p, double r_sense);

/// Positions of trees and estimated UAVs strictly closer than r_o to p_i.
/// Trees come first in forest order, then UAV estimates in input order.
std::vector<Vec2> nearby_obstacles(const Forest& forest, std::span<const Vec2> uav_estimates,
                                   const Vec2& p_i, double r_o);

/// Distance from p to the nearest tree surface (center distance minus radius).
/// +inf for an empty forest.
double clearance_to_trees(const Forest& forest, const Vec2& p);

std::string forest_to_json(const Forest& forest);
Forest forest_from_json(const std::string& text);
void save_forest(const Forest& forest, const std::filesystem::path& path);
Forest load_forest(const std::filesystem::path& path);

}  // namespace pacnav
