#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pacnav/forest.hpp"
#include "pacnav/geometry.hpp"

namespace pacnav {

struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const Cell&, const Cell&) = default;
};

/// Per-agent occupancy map. Cells only ever go from free to occupied.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  /// `origin` is the lower-left corner of cell (0, 0).
  OccupancyGrid(const Vec2& origin, double cell_size, int width, int height);

  /// Smallest grid of `cell_size` cells covering `area` grown by `margin`.
  static OccupancyGrid covering(const Area& area, double cell_size, double margin = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  const Vec2& origin() const { return origin_; }
  std::size_t cell_count() const { return occupancy_.size(); }

  bool in_bounds(const Cell& c) const {
    return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_;
  }
  std::size_t index(const Cell& c) const {
    return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.x);
  }
  Cell cell_of_index(std::size_t i) const {
    return {static_cast<int>(i % static_cast<std::size_t>(width_)),
            static_cast<int>(i / static_cast<std::size_t>(width_))};
  }

  /// Out-of-bounds cells report as occupied.
  bool occupied(const Cell& c) const { return !in_bounds(c) || occupancy_[index(c)] != 0; }
  bool free(const Cell& c) const { return !occupied(c); }
  void mark_occupied(const Cell& c);
  std::size_t occupied_count() const;

  Vec2 center(const Cell& c) const;
  /// Cell containing p; may be out of bounds.
  Cell cell_at(const Vec2& p) const;
  Cell clamp(const Cell& c) const;

 private:
  Vec2 origin_;
  double cell_size_ = 1.0;
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> occupancy_;
};

/// Marks every cell whose center is within radius + inflation of a tree.
/// Cells listed in `keep_free` are left untouched.
void update_grid(OccupancyGrid& grid, std::span<const Tree> sensed, double inflation,
                 std::span<const Cell> keep_free = {});

/// 1 for axis neighbors, sqrt(2) for diagonal neighbors, empty when the cells
/// are not 8-adjacent or either is occupied.
std::optional<double> edge_weight(const OccupancyGrid& grid, const Cell& a, const Cell& b);

struct GridPath {
  std::vector<Cell> cells;
  std::vector<Vec2> waypoints;
  /// Path length in cell units, computed from the move counts.
  double cost = 0.0;
  /// Cell actually planned to (differs from the request when that was blocked).
  Cell goal;
};

/// Optional instrumentation of one search.
struct AstarTrace {
  std::vector<Cell> expanded;
};

/// A* over the 8-connected grid with a Euclidean heuristic. Keeps its search
/// buffers between calls so per-step replanning does not reallocate.
class AstarPlanner {
 public:
  /// The start cell is traversable even if mapped as occupied (an agent can
  /// always leave the cell it is in). A blocked or out-of-bounds goal is
  /// replaced by the nearest free cell. Empty when no path exists.
  std::optional<GridPath> plan(const OccupancyGrid& grid, Cell start, Cell goal,
                               AstarTrace* trace = nullptr);

 private:
  void reset(std::size_t n);

  std::vector<double> g_;
  std::vector<std::int32_t> parent_;
  std::vector<std::uint32_t> seen_;
  std::vector<std::uint32_t> closed_;
  std::uint32_t stamp_ = 0;
};

std::optional<GridPath> astar(const OccupancyGrid& grid, Cell start, Cell goal,
                              AstarTrace* trace = nullptr);

/// Heuristic used by the planner, in cell units.
double grid_heuristic(const Cell& a, const Cell& goal);

/// Free cell closest (Euclidean, center to `target`) to the target cell;
/// lowest index on ties.
std::optional<Cell> nearest_free_cell(const OccupancyGrid& grid, const Cell& target);

/// Waypoint one step past the path waypoint nearest to p_i (lowest index on
/// ties); the final waypoint when that is the nearest.
Vec2 next_waypoint(const GridPath& path, const Vec2& p_i);

/// Plain PBM (P1) dump, top row first, 1 = occupied.
std::string to_pbm(const OccupancyGrid& grid);

}  // namespace pacnav
