#include "pacnav/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"
#include "pacnav/error.hpp"
#include "pacnav/rng.hpp"

namespace pacnav {

using nlohmann::json;

bool Area::contains(const Vec2& p) const {
  const Vec2 hi = max();
  return p.x >= min.x && p.x <= hi.x && p.y >= min.y && p.y <= hi.y;
}

Forest generate_forest(const ForestSpec& spec) {
  if (!(spec.area.size.x > 0.0) || !(spec.area.size.y > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "forest area must have positive extent");
  }
  if (spec.tree_radius < 0.0 || spec.min_spacing < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "tree radius and spacing must be non-negative");
  }

  Forest forest;
  forest.area = spec.area;
  forest.seed = spec.seed;
  forest.keep_clear = spec.keep_clear;
  forest.trees.reserve(spec.n_trees);

  Rng rng = make_rng(spec.seed, Stream::kForest);
  std::uniform_real_distribution<double> ux(spec.area.min.x, spec.area.max().x);
  std::uniform_real_distribution<double> uy(spec.area.min.y, spec.area.max().y);
  const double spacing2 = spec.min_spacing * spec.min_spacing;

  std::size_t attempts = 0;
  while (forest.trees.size() < spec.n_trees) {
    if (attempts++ >= kForestAttemptBudget) {
      throw Error(ErrorCode::kPlacementFailure,
                  "placed " + std::to_string(forest.trees.size()) + " of " +
                      std::to_string(spec.n_trees) + " trees");
    }
    const double x = ux(rng);
    const Vec2 c{x, uy(rng)};
    const bool in_zone = std::any_of(spec.keep_clear.begin(), spec.keep_clear.end(),
                                     [&](const KeepClearZone& z) {
                                       return squared_norm(c - z.center) < z.radius * z.radius;
                                     });
    if (in_zone) continue;
    const bool crowded = std::any_of(forest.trees.begin(), forest.trees.end(), [&](const Tree& t) {
      return squared_norm(c - t.center) < spacing2;
    });
    if (crowded) continue;
    forest.trees.push_back({c, spec.tree_radius});
  }
  return forest;
}

double forest_density(std::size_t n_trees, double radius, double area) {
  if (!(area > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "area must be positive");
  }
  return static_cast<double>(n_trees) * kPi * radius * radius / area;
}

std::size_t trees_for_density(double rho, double radius, double area) {
  return static_cast<std::size_t>(std::llround(rho * area / (kPi * radius * radius)));
}

namespace {

double segment_point_distance2(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 ab = b - a;
  const double len2 = squared_norm(ab);
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  }
  return squared_norm(a + ab * t - p);
}

}  // namespace

bool segment_clear(std::span<const Disk> disks, const Vec2& a, const Vec2& b, double inflation) {
  for (const Disk& d : disks) {
    const double r = d.radius + inflation;
    if (segment_point_distance2(a, b, d.center) <= r * r) {
      return false;
    }
  }
  return true;
}

bool line_of_sight(const Forest& forest, const Vec2& a, const Vec2& b, double inflation) {
  // symmetric by construction: distance to the segment does not depend on its orientation
  const bool forward = (a.x < b.x) || (a.x == b.x && a.y <= b.y);
  return forward ? segment_clear(forest.trees, a, b, inflation)
                 : segment_clear(forest.trees, b, a, inflation);
}

std::vector<std::size_t> sense_obstacles(const Forest& forest, const Vec2& p, double r_sense) {
  std::vector<std::size_t> out;
  const double r2 = r_sense * r_sense;
  for (std::size_t i = 0; i < forest.trees.size(); ++i) {
    if (squared_norm(forest.trees[i].center - p) <= r2) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<Vec2> nearby_obstacles(const Forest& forest, std::span<const Vec2> uav_estimates,
                                   const Vec2& p_i, double r_o) {
  std::vector<Vec2> out;
  for (const Tree& t : forest.trees) {
    if (distance(t.center, p_i) < r_o) out.push_back(t.center);
  }
  for (const Vec2& e : uav_estimates) {
    if (distance(e, p_i) < r_o) out.push_back(e);
  }
  return out;
}

double clearance_to_trees(const Forest& forest, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Tree& t : forest.trees) {
    best = std::min(best, distance(t.center, p) - t.radius);
  }
  return best;
}

namespace {

json disk_to_json(const Disk& d) { return json::array({d.center.x, d.center.y, d.radius}); }

Disk disk_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw Error(ErrorCode::kConfig, "disk entry must be [x, y, radius]");
  }
  return {{j[0].get<double>(), j[1].get<double>()}, j[2].get<double>()};
}

}  // namespace

std::string forest_to_json(const Forest& forest) {
  json j;
  j["seed"] = forest.seed;
  j["area"] = {{"min", {forest.area.min.x, forest.area.min.y}},
               {"size", {forest.area.size.x, forest.area.size.y}}};
  j["trees"] = json::array();
  for (const Tree& t : forest.trees) j["trees"].push_back(disk_to_json(t));
  j["keep_clear"] = json::array();
  for (const KeepClearZone& z : forest.keep_clear) j["keep_clear"].push_back(disk_to_json(z));
  return j.dump(2) + "\n";
}

Forest forest_from_json(const std::string& text) {
  Forest f;
  try {
    const json j = json::parse(text);
    for (const auto& [key, _] : j.items()) {
      if (key != "seed" && key != "area" && key != "trees" && key != "keep_clear") {
        throw Error(ErrorCode::kConfig, "unknown forest key '" + key + "'");
      }
    }
    f.seed = j.at("seed").get<std::uint64_t>();
    const json& area = j.at("area");
    f.area.min = {area.at("min").at(0).get<double>(), area.at("min").at(1).get<double>()};
    f.area.size = {area.at("size").at(0).get<double>(), area.at("size").at(1).get<double>()};
    for (const json& t : j.at("trees")) f.trees.push_back(disk_from_json(t));
    if (j.contains("keep_clear")) {
      for (const json& z : j.at("keep_clear")) f.keep_clear.push_back(disk_from_json(z));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("malformed forest document: ") + e.what());
  }
  return f;
}

void save_forest(const Forest& forest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << forest_to_json(forest);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Forest load_forest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return forest_from_json(ss.str());
}

}  // namespace pacnav
