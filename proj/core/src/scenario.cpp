#include "pacnav/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pacnav/error.hpp"
#include "pacnav/rng.hpp"

namespace pacnav {

using nlohmann::json;

bool ScenarioConfig::is_informed(std::uint32_t id) const {
  return std::find(informed_ids.begin(), informed_ids.end(), id) != informed_ids.end();
}

std::uint64_t ScenarioConfig::effective_forest_seed() const {
  return forest.seed ? *forest.seed : derive_seed(master_seed, Stream::kForest);
}

ForestSpec ScenarioConfig::forest_spec() const {
  ForestSpec spec;
  spec.seed = effective_forest_seed();
  spec.area = forest.area;
  spec.n_trees = forest.n_trees;
  spec.tree_radius = forest.tree_radius;
  spec.min_spacing = forest.min_spacing;
  spec.keep_clear = {{spawn_center, spawn_radius + forest.spawn_clearance},
                     {goal, goal_radius}};
  return spec;
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfig, msg); };
  if (n_uavs == 0) fail("n_uavs must be positive");
  std::set<std::uint32_t> seen;
  for (std::uint32_t id : informed_ids) {
    if (id >= n_uavs) fail("informed id " + std::to_string(id) + " is not a swarm member");
    if (!seen.insert(id).second) fail("informed id " + std::to_string(id) + " listed twice");
  }
  if (!(spawn_radius > 0.0)) fail("spawn_radius must be positive");
  if (!(goal_radius > 0.0)) fail("goal_radius must be positive");
  if (!(uav_radius > 0.0)) fail("uav_radius must be positive");
  if (spawn_margin < 0.0) fail("spawn_margin must be non-negative");
  if (!(dt > 0.0)) fail("dt must be positive");
  if (max_steps <= 0) fail("max_steps must be positive");
  if (!(forest.area.size.x > 0.0 && forest.area.size.y > 0.0)) fail("forest area must be non-empty");
  if (forest.tree_radius < 0.0 || forest.min_spacing < 0.0) fail("tree geometry must be non-negative");
  if (perception.noise.sigma_los < 0.0 || perception.noise.sigma_nlos < 0.0) fail("noise sigmas must be non-negative");
  if (perception.k_m < 0 || perception.k_p <= 0) fail("k_m must be >= 0 and k_p > 0");
  if (!(perception.sensing_radius > 0.0)) fail("sensing_radius must be positive");
  if (!(planner.cell_size > 0.0) || planner.inflation < 0.0 || planner.map_margin < 0.0) fail("invalid planner parameters");
  const ControlParams& c = control;
  if (!(c.v_min > 0.0 && c.v_min < 1.0)) fail("v_min must lie in (0, 1)");
  if (!(c.alpha > 0.0)) fail("alpha must be positive");
  if (!(c.r_f > 0.0) || !(c.r_o > 0.0)) fail("r_f and r_o must be positive");
  if (!(c.v_max > 0.0)) fail("v_max must be positive");
  if (!(c.eps_dist > 0.0)) fail("eps_dist must be positive");
}

std::vector<std::string> preset_names() {
  return {"1a", "1b", "2a", "2b", "forest-real", "1a-nt", "1b-nt", "2a-nt", "2b-nt"};
}

namespace {

ScenarioConfig simulated_case(bool six, std::size_t n_informed, bool tree_count_matched) {
  ScenarioConfig c;
  c.n_uavs = six ? 6 : 3;
  c.informed_ids.clear();
  for (std::uint32_t i = 0; i < n_informed; ++i) c.informed_ids.push_back(i);
  c.goal = {20.0, 0.0};
  c.spawn_center = {-20.0, 0.0};
  c.spawn_radius = six ? 4.5 : 3.0;
  c.goal_radius = six ? 8.5 : 6.0;
  c.control.r_f = 4.0;
  c.control.r_o = 2.5;
  c.control.k_c = 1.0;
  c.control.k_n = 1.2;
  c.forest.area = {{-25.0, -25.0}, {50.0, 50.0}};
  c.forest.n_trees = tree_count_matched
                         ? 104
                         : trees_for_density(0.4, c.control.r_o, c.forest.area.extent());
  return c;
}

}  // namespace

ScenarioConfig preset(std::string_view name) {
  ScenarioConfig c;
  if (name == "1a" || name == "1a-nt") {
    c = simulated_case(false, 1, name.ends_with("-nt"));
  } else if (name == "1b" || name == "1b-nt") {
    c = simulated_case(false, 2, name.ends_with("-nt"));
  } else if (name == "2a" || name == "2a-nt") {
    c = simulated_case(true, 2, name.ends_with("-nt"));
  } else if (name == "2b" || name == "2b-nt") {
    c = simulated_case(true, 4, name.ends_with("-nt"));
  } else if (name == "forest-real") {
    c.n_uavs = 4;
    c.informed_ids = {2};
    c.goal = {0.0, 40.0};
    c.spawn_center = {0.0, 0.0};
    c.spawn_radius = 3.0;
    c.goal_radius = 8.5;
    c.forest.area = {{-20.0, -8.0}, {40.0, 56.0}};
    c.forest.n_trees = trees_for_density(0.25, c.control.r_o, c.forest.area.extent());
  } else {
    throw Error(ErrorCode::kConfig, "unknown preset '" + std::string(name) + "'");
  }
  c.name = std::string(name);
  return c;
}

namespace {

json vec_json(const Vec2& v) { return json::array({v.x, v.y}); }

/// Reads keys out of one JSON object and rejects anything left unread.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw Error(ErrorCode::kConfig, path_ + " must be an object");
  }

  template <class T>
  void read(const char* key, T& out) {
    used_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kConfig, path_ + "." + key + ": " + e.what());
    }
  }

  void read_vec(const char* key, Vec2& out) {
    used_.insert(key);
    if (!j_.contains(key)) return;
    const json& v = j_.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw Error(ErrorCode::kConfig, path_ + "." + key + " must be [x, y]");
    }
    out = {v[0].get<double>(), v[1].get<double>()};
  }

  std::optional<ObjectReader> child(const char* key) {
    used_.insert(key);
    if (!j_.contains(key)) return std::nullopt;
    return ObjectReader(j_.at(key), path_ + "." + key);
  }

  const json& raw(const char* key) {
    used_.insert(key);
    return j_.at(key);
  }
  bool has(const char* key) const { return j_.contains(key); }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!used_.contains(key)) {
        throw Error(ErrorCode::kConfig, "unknown key '" + path_ + "." + key + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

}  // namespace

std::string config_to_json(const ScenarioConfig& c) {
  json j;
  j["name"] = c.name;
  j["n_uavs"] = c.n_uavs;
  j["informed_ids"] = c.informed_ids;
  j["goal"] = vec_json(c.goal);
  j["spawn_center"] = vec_json(c.spawn_center);
  j["spawn_radius"] = c.spawn_radius;
  j["goal_radius"] = c.goal_radius;
  j["uav_radius"] = c.uav_radius;
  j["spawn_margin"] = c.spawn_margin;
  j["dt"] = c.dt;
  j["max_steps"] = c.max_steps;
  j["master_seed"] = c.master_seed;
  j["forest"] = {
      {"seed", c.forest.seed ? json(*c.forest.seed) : json(nullptr)},
      {"area_min", vec_json(c.forest.area.min)},
      {"area_size", vec_json(c.forest.area.size)},
      {"n_trees", c.forest.n_trees},
      {"tree_radius", c.forest.tree_radius},
      {"min_spacing", c.forest.min_spacing},
      {"spawn_clearance", c.forest.spawn_clearance},
  };
  j["perception"] = {
      {"sigma_los", c.perception.noise.sigma_los},
      {"sigma_nlos", c.perception.noise.sigma_nlos},
      {"k_m", c.perception.k_m},
      {"k_p", c.perception.k_p},
      {"sensing_radius", c.perception.sensing_radius},
      {"los_inflation", c.perception.los_inflation},
      {"uav_occlusion", c.perception.uav_occlusion},
  };
  j["planner"] = {
      {"cell_size", c.planner.cell_size},
      {"inflation", c.planner.inflation},
      {"map_margin", c.planner.map_margin},
  };
  j["control"] = {
      {"k_n", c.control.k_n},     {"k_c", c.control.k_c},     {"v_min", c.control.v_min},
      {"alpha", c.control.alpha}, {"r_f", c.control.r_f},     {"r_o", c.control.r_o},
      {"v_max", c.control.v_max}, {"eps_dist", c.control.eps_dist},
  };
  return j.dump(2) + "\n";
}

ScenarioConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("malformed config: ") + e.what());
  }
  ScenarioConfig c;
  ObjectReader r(j, "config");
  r.read("name", c.name);
  r.read("n_uavs", c.n_uavs);
  r.read("informed_ids", c.informed_ids);
  r.read_vec("goal", c.goal);
  r.read_vec("spawn_center", c.spawn_center);
  r.read("spawn_radius", c.spawn_radius);
  r.read("goal_radius", c.goal_radius);
  r.read("uav_radius", c.uav_radius);
  r.read("spawn_margin", c.spawn_margin);
  r.read("dt", c.dt);
  r.read("max_steps", c.max_steps);
  r.read("master_seed", c.master_seed);
  if (auto f = r.child("forest")) {
    if (f->has("seed")) {
      const json& s = f->raw("seed");
      if (s.is_null()) {
        c.forest.seed.reset();
      } else if (s.is_number_unsigned()) {
        c.forest.seed = s.get<std::uint64_t>();
      } else {
        throw Error(ErrorCode::kConfig, "config.forest.seed must be an unsigned integer or null");
      }
    }
    f->read_vec("area_min", c.forest.area.min);
    f->read_vec("area_size", c.forest.area.size);
    f->read("n_trees", c.forest.n_trees);
    f->read("tree_radius", c.forest.tree_radius);
    f->read("min_spacing", c.forest.min_spacing);
    f->read("spawn_clearance", c.forest.spawn_clearance);
    f->finish();
  }
  if (auto p = r.child("perception")) {
    p->read("sigma_los", c.perception.noise.sigma_los);
    p->read("sigma_nlos", c.perception.noise.sigma_nlos);
    p->read("k_m", c.perception.k_m);
    p->read("k_p", c.perception.k_p);
    p->read("sensing_radius", c.perception.sensing_radius);
    p->read("los_inflation", c.perception.los_inflation);
    p->read("uav_occlusion", c.perception.uav_occlusion);
    p->finish();
  }
  if (auto p = r.child("planner")) {
    p->read("cell_size", c.planner.cell_size);
    p->read("inflation", c.planner.inflation);
    p->read("map_margin", c.planner.map_margin);
    p->finish();
  }
  if (auto p = r.child("control")) {
    p->read("k_n", c.control.k_n);
    p->read("k_c", c.control.k_c);
    p->read("v_min", c.control.v_min);
    p->read("alpha", c.control.alpha);
    p->read("r_f", c.control.r_f);
    p->read("r_o", c.control.r_o);
    p->read("v_max", c.control.v_max);
    p->read("eps_dist", c.control.eps_dist);
    p->finish();
  }
  r.finish();
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return config_from_json(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace pacnav
