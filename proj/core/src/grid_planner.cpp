#include "pacnav/grid_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "pacnav/error.hpp"

namespace pacnav {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

constexpr int kDx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
constexpr int kDy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

}  // namespace

OccupancyGrid::OccupancyGrid(const Vec2& origin, double cell_size, int width, int height)
    : origin_(origin), cell_size_(cell_size), width_(width), height_(height) {
  if (!(cell_size > 0.0) || width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs positive cell size and dimensions");
  }
  occupancy_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

OccupancyGrid OccupancyGrid::covering(const Area& area, double cell_size, double margin) {
  const Vec2 origin = area.min - Vec2{margin, margin};
  const int w = static_cast<int>(std::ceil((area.size.x + 2.0 * margin) / cell_size));
  const int h = static_cast<int>(std::ceil((area.size.y + 2.0 * margin) / cell_size));
  return OccupancyGrid(origin, cell_size, std::max(w, 1), std::max(h, 1));
}

void OccupancyGrid::mark_occupied(const Cell& c) {
  if (in_bounds(c)) occupancy_[index(c)] = 1;
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), 1));
}

Vec2 OccupancyGrid::center(const Cell& c) const {
  return {origin_.x + (c.x + 0.5) * cell_size_, origin_.y + (c.y + 0.5) * cell_size_};
}

Cell OccupancyGrid::cell_at(const Vec2& p) const {
  return {static_cast<int>(std::floor((p.x - origin_.x) / cell_size_)),
          static_cast<int>(std::floor((p.y - origin_.y) / cell_size_))};
}

Cell OccupancyGrid::clamp(const Cell& c) const {
  return {std::clamp(c.x, 0, width_ - 1), std::clamp(c.y, 0, height_ - 1)};
}

void update_grid(OccupancyGrid& grid, std::span<const Tree> sensed, double inflation,
                 std::span<const Cell> keep_free) {
  for (const Tree& t : sensed) {
    const double r = t.radius + inflation;
    const Cell lo = grid.clamp(grid.cell_at(t.center - Vec2{r, r}));
    const Cell hi = grid.clamp(grid.cell_at(t.center + Vec2{r, r}));
    for (int y = lo.y; y <= hi.y; ++y) {
      for (int x = lo.x; x <= hi.x; ++x) {
        const Cell c{x, y};
        if (squared_norm(grid.center(c) - t.center) > r * r) continue;
        if (std::find(keep_free.begin(), keep_free.end(), c) != keep_free.end()) continue;
        grid.mark_occupied(c);
      }
    }
  }
}

std::optional<double> edge_weight(const OccupancyGrid& grid, const Cell& a, const Cell& b) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  if (dx > 1 || dy > 1 || (dx == 0 && dy == 0)) return std::nullopt;
  if (grid.occupied(a) || grid.occupied(b)) return std::nullopt;
  return (dx == 1 && dy == 1) ? kSqrt2 : 1.0;
}

double grid_heuristic(const Cell& a, const Cell& goal) {
  return std::hypot(static_cast<double>(a.x - goal.x), static_cast<double>(a.y - goal.y));
}

std::optional<Cell> nearest_free_cell(const OccupancyGrid& grid, const Cell& target) {
  std::optional<Cell> best;
  long best_d2 = std::numeric_limits<long>::max();
  for (int y = 0; y < grid.height(); ++y) {
    for (int x = 0; x < grid.width(); ++x) {
      const Cell c{x, y};
      if (grid.occupied(c)) continue;
      const long dx = x - target.x;
      const long dy = y - target.y;
      const long d2 = dx * dx + dy * dy;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = c;
      }
    }
  }
  return best;
}

void AstarPlanner::reset(std::size_t n) {
  if (g_.size() != n) {
    g_.assign(n, 0.0);
    parent_.assign(n, -1);
    seen_.assign(n, 0);
    closed_.assign(n, 0);
    stamp_ = 0;
  }
  if (++stamp_ == 0) {
    std::fill(seen_.begin(), seen_.end(), 0);
    std::fill(closed_.begin(), closed_.end(), 0);
    stamp_ = 1;
  }
}

std::optional<GridPath> AstarPlanner::plan(const OccupancyGrid& grid, Cell start, Cell goal,
                                           AstarTrace* trace) {
  if (!grid.in_bounds(start)) {
    throw Error(ErrorCode::kInvalidArgument, "start cell outside the grid");
  }
  if (goal != start && grid.occupied(goal)) {
    const auto alt = nearest_free_cell(grid, goal);
    if (!alt) return std::nullopt;
    goal = *alt;
  }

  reset(grid.cell_count());
  struct Open {
    double f;
    std::size_t idx;
    bool operator>(const Open& o) const { return f > o.f || (f == o.f && idx > o.idx); }
  };
  std::priority_queue<Open, std::vector<Open>, std::greater<>> open;

  const std::size_t s = grid.index(start);
  const std::size_t t = grid.index(goal);
  g_[s] = 0.0;
  parent_[s] = -1;
  seen_[s] = stamp_;
  open.push({grid_heuristic(start, goal), s});

  bool found = false;
  while (!open.empty()) {
    const Open top = open.top();
    open.pop();
    if (closed_[top.idx] == stamp_) continue;
    closed_[top.idx] = stamp_;
    const Cell c = grid.cell_of_index(top.idx);
    if (trace) trace->expanded.push_back(c);
    if (top.idx == t) {
      found = true;
      break;
    }
    for (int k = 0; k < 8; ++k) {
      const Cell nb{c.x + kDx[k], c.y + kDy[k]};
      if (grid.occupied(nb)) continue;
      const std::size_t ni = grid.index(nb);
      if (closed_[ni] == stamp_) continue;
      const double ng = g_[top.idx] + (k < 4 ? 1.0 : kSqrt2);
      if (seen_[ni] != stamp_ || ng < g_[ni]) {
        seen_[ni] = stamp_;
        g_[ni] = ng;
        parent_[ni] = static_cast<std::int32_t>(top.idx);
        open.push({ng + grid_heuristic(nb, goal), ni});
      }
    }
  }
  if (!found) return std::nullopt;

  GridPath path;
  path.goal = goal;
  for (std::int64_t i = static_cast<std::int64_t>(t); i >= 0; i = parent_[static_cast<std::size_t>(i)]) {
    path.cells.push_back(grid.cell_of_index(static_cast<std::size_t>(i)));
    if (static_cast<std::size_t>(i) == s) break;
  }
  std::reverse(path.cells.begin(), path.cells.end());
  long axis = 0;
  long diag = 0;
  for (std::size_t m = 0; m + 1 < path.cells.size(); ++m) {
    const bool d = path.cells[m].x != path.cells[m + 1].x && path.cells[m].y != path.cells[m + 1].y;
    (d ? diag : axis) += 1;
  }
  path.cost = static_cast<double>(axis) + static_cast<double>(diag) * kSqrt2;
  path.waypoints.reserve(path.cells.size());
  for (const Cell& c : path.cells) path.waypoints.push_back(grid.center(c));
  return path;
}

std::optional<GridPath> astar(const OccupancyGrid& grid, Cell start, Cell goal,
                              AstarTrace* trace) {
  AstarPlanner planner;
  return planner.plan(grid, start, goal, trace);
}

Vec2 next_waypoint(const GridPath& path, const Vec2& p_i) {
  if (path.waypoints.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "next_waypoint on an empty path");
  }
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < path.waypoints.size(); ++m) {
    const double d2 = squared_norm(path.waypoints[m] - p_i);
    if (d2 < best) {
      best = d2;
      nearest = m;
    }
  }
  return path.waypoints[std::min(nearest + 1, path.waypoints.size() - 1)];
}

std::string to_pbm(const OccupancyGrid& grid) {
  std::ostringstream os;
  os << "P1\n# origin " << grid.origin().x << ' ' << grid.origin().y << " cell "
     << grid.cell_size() << '\n'
     << grid.width() << ' ' << grid.height() << '\n';
  for (int y = grid.height() - 1; y >= 0; --y) {
    for (int x = 0; x < grid.width(); ++x) {
      os << (grid.occupied({x, y}) ? '1' : '0') << (x + 1 < grid.width() ? " " : "");
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace pacnav
