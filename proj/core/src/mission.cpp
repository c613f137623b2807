#include "pacnav/mission.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "pacnav/error.hpp"

namespace pacnav {

using nlohmann::json;

namespace {

bool all_inside(const std::vector<Vec2>& positions, const ScenarioConfig& c) {
  return std::all_of(positions.begin(), positions.end(),
                     [&](const Vec2& p) { return distance(p, c.goal) <= c.goal_radius; });
}

void fold_positions(const std::vector<Vec2>& ps, const Forest& forest, double& min_pair,
                    double& min_tree) {
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) min_pair = std::min(min_pair, distance(ps[i], ps[j]));
    for (const Tree& t : forest.trees) min_tree = std::min(min_tree, distance(ps[i], t.center));
  }
}

}  // namespace

MissionSummary summarize(const MissionLog& log) {
  MissionSummary s;
  s.steps = static_cast<Step>(log.records.size());
  s.min_pair_distance = std::numeric_limits<double>::infinity();
  s.min_tree_distance = std::numeric_limits<double>::infinity();
  double order_sum = 0.0;
  for (const StepRecord& r : log.records) {
    if (!s.completion_step && all_inside(r.positions, log.config)) s.completion_step = r.k;
    for (double d : r.pair_distances) s.min_pair_distance = std::min(s.min_pair_distance, d);
    for (double d : r.tree_distances) s.min_tree_distance = std::min(s.min_tree_distance, d);
    order_sum += r.order;
  }
  fold_positions(log.final_positions, log.forest, s.min_pair_distance, s.min_tree_distance);
  if (!s.completion_step && all_inside(log.final_positions, log.config)) {
    s.completion_step = s.steps;
  }
  s.completed = s.completion_step.has_value();
  if (!log.records.empty()) {
    s.mean_order = order_sum / static_cast<double>(log.records.size());
    s.terminal_order = log.records.back().order;
  }
  return s;
}

MissionLog run_mission(const ScenarioConfig& config, Forest forest) {
  World world = make_world(config, std::move(forest));
  MissionLog log;
  log.config = config;
  log.forest = world.forest();
  while (!world.all_in_goal() && world.k() < config.max_steps) {
    log.records.push_back(world.step());
  }
  for (const AgentState& a : world.agents()) log.final_positions.push_back(a.position);
  log.summary = summarize(log);
  return log;
}

MissionLog run_mission(const ScenarioConfig& config) {
  config.validate();
  return run_mission(config, generate_forest(config.forest_spec()));
}

std::uint64_t batch_run_seed(std::uint64_t base, std::size_t index) { return base + index; }

namespace {

Stat make_stat(const std::vector<double>& xs) {
  Stat s;
  s.count = xs.size();
  if (xs.empty()) return s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  return s;
}

}  // namespace

BatchSummary run_batch(const ScenarioConfig& config, std::size_t n_runs,
                       const std::vector<std::uint64_t>& forest_seeds,
                       const std::function<void(const BatchRun&, const MissionLog&)>& on_run) {
  if (n_runs == 0) throw Error(ErrorCode::kInvalidArgument, "a batch needs at least one run");
  if (!forest_seeds.empty() && forest_seeds.size() < n_runs) {
    throw Error(ErrorCode::kInvalidArgument, "fewer forest seeds than runs");
  }
  BatchSummary batch;
  batch.config = config;
  std::vector<double> times, pair, tree, order;
  for (std::size_t i = 0; i < n_runs; ++i) {
    ScenarioConfig c = config;
    c.master_seed = batch_run_seed(config.master_seed, i);
    if (!forest_seeds.empty()) c.forest.seed = forest_seeds[i];
    MissionLog log = run_mission(c);
    BatchRun run{i, c.master_seed, c.effective_forest_seed(), log.summary};
    if (run.summary.completed) {
      ++batch.completed;
      times.push_back(*run.summary.completion_time(c.dt));
    }
    pair.push_back(run.summary.min_pair_distance);
    tree.push_back(run.summary.min_tree_distance);
    order.push_back(run.summary.terminal_order);
    if (on_run) on_run(run, log);
    batch.runs.push_back(run);
  }
  batch.completion_time = make_stat(times);
  batch.min_pair_distance = make_stat(pair);
  batch.min_tree_distance = make_stat(tree);
  batch.terminal_order = make_stat(order);
  return batch;
}

// ---------------------------------------------------------------------------
// Output files

namespace {

/// Shortest round-trip decimal form; "inf"/"nan" spelled out.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

const std::vector<std::string>& timeseries_columns() {
  static const std::vector<std::string> cols = {
      "step",    "time",   "agent",    "informed",  "x",        "y",
      "vx",      "vy",     "state",    "target_id", "target_x", "target_y",
      "nav_x",   "nav_y",  "coll_x",   "coll_y",    "order",    "min_pair_dist",
      "max_pair_dist",     "mean_pair_dist",        "tree_dist"};
  return cols;
}

std::string summary_to_json(const MissionLog& log) {
  const MissionSummary& s = log.summary;
  json j;
  j["format_version"] = 1;
  j["summary"] = {
      {"completed", s.completed},
      {"completion_step", s.completion_step ? json(*s.completion_step) : json(nullptr)},
      {"completion_time", s.completion_step ? json(*s.completion_time(log.config.dt)) : json(nullptr)},
      {"steps", s.steps},
      {"min_pair_distance", num_json(s.min_pair_distance)},
      {"min_tree_distance", num_json(s.min_tree_distance)},
      {"mean_order", s.mean_order},
      {"terminal_order", s.terminal_order},
  };
  j["integration"] = {{"scheme", "euler"}, {"dt", log.config.dt}};
  j["forest_seed"] = log.forest.seed;
  j["n_trees"] = log.forest.trees.size();
  j["config"] = json::parse(config_to_json(log.config));
  return j.dump(2) + "\n";
}

void write_outputs(const MissionLog& log, const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  const double dt = log.config.dt;

  {
    const auto path = out_dir / "timeseries.csv";
    std::ofstream out = open_out(path);
    const auto& cols = timeseries_columns();
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (const StepRecord& r : log.records) {
      double lo = std::numeric_limits<double>::quiet_NaN();
      double hi = lo;
      double mean = lo;
      if (!r.pair_distances.empty()) {
        lo = *std::min_element(r.pair_distances.begin(), r.pair_distances.end());
        hi = *std::max_element(r.pair_distances.begin(), r.pair_distances.end());
        double sum = 0.0;
        for (double d : r.pair_distances) sum += d;
        mean = sum / static_cast<double>(r.pair_distances.size());
      }
      for (std::size_t i = 0; i < r.positions.size(); ++i) {
        out << r.k << ',' << num(static_cast<double>(r.k) * dt) << ',' << i << ','
            << (log.config.is_informed(static_cast<std::uint32_t>(i)) ? 1 : 0) << ','
            << num(r.positions[i].x) << ',' << num(r.positions[i].y) << ','
            << num(r.velocities[i].x) << ',' << num(r.velocities[i].y) << ','
            << to_string(r.fsm[i]) << ','
            << (r.target_ids[i] ? std::to_string(r.target_ids[i]->value) : std::string("-1")) << ','
            << num(r.targets[i].x) << ',' << num(r.targets[i].y) << ',' << num(r.nav[i].x) << ','
            << num(r.nav[i].y) << ',' << num(r.coll[i].x) << ',' << num(r.coll[i].y) << ','
            << num(r.order) << ',' << num(lo) << ',' << num(hi) << ',' << num(mean) << ','
            << num(r.tree_distances[i]) << '\n';
      }
    }
    check_written(out, path);
  }

  {
    const auto path = out_dir / "estimates.csv";
    std::ofstream out = open_out(path);
    out << "step,observer,observed,x,y,los\n";
    for (const StepRecord& r : log.records) {
      for (const EstimateRecord& e : r.estimates) {
        out << r.k << ',' << e.observer.value << ',' << e.observed.value << ','
            << num(e.estimate.x) << ',' << num(e.estimate.y) << ',' << (e.los ? 1 : 0) << '\n';
      }
    }
    check_written(out, path);
  }

  {
    const auto path = out_dir / "pairs.csv";
    std::ofstream out = open_out(path);
    out << "step,i,j,distance\n";
    for (const StepRecord& r : log.records) {
      std::size_t m = 0;
      for (std::size_t i = 0; i < r.positions.size(); ++i) {
        for (std::size_t j = i + 1; j < r.positions.size(); ++j) {
          out << r.k << ',' << i << ',' << j << ',' << num(r.pair_distances[m++]) << '\n';
        }
      }
    }
    check_written(out, path);
  }

  {
    const auto path = out_dir / "summary.json";
    std::ofstream out = open_out(path);
    out << summary_to_json(log);
    check_written(out, path);
  }

  save_forest(log.forest, out_dir / "forest.json");
}

void write_batch_outputs(const BatchSummary& batch, const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  const double dt = batch.config.dt;
  {
    const auto path = out_dir / "batch_summary.csv";
    std::ofstream out = open_out(path);
    out << "run,master_seed,forest_seed,completed,completion_step,completion_time,"
           "min_pair_distance,min_tree_distance,mean_order,terminal_order\n";
    for (const BatchRun& r : batch.runs) {
      const MissionSummary& s = r.summary;
      out << r.index << ',' << r.master_seed << ',' << r.forest_seed << ','
          << (s.completed ? 1 : 0) << ','
          << (s.completion_step ? std::to_string(*s.completion_step) : std::string()) << ','
          << (s.completion_step ? num(*s.completion_time(dt)) : std::string()) << ','
          << num(s.min_pair_distance) << ',' << num(s.min_tree_distance) << ','
          << num(s.mean_order) << ',' << num(s.terminal_order) << '\n';
    }
    check_written(out, path);
  }
  {
    auto stat = [](const Stat& s) {
      return json{{"mean", num_json(s.mean)}, {"min", num_json(s.min)},
                  {"max", num_json(s.max)},   {"count", s.count}};
    };
    json j;
    j["runs"] = batch.runs.size();
    j["completed"] = batch.completed;
    j["completion_time"] = stat(batch.completion_time);
    j["min_pair_distance"] = stat(batch.min_pair_distance);
    j["min_tree_distance"] = stat(batch.min_tree_distance);
    j["terminal_order"] = stat(batch.terminal_order);
    j["config"] = json::parse(config_to_json(batch.config));
    const auto path = out_dir / "batch_summary.json";
    std::ofstream out = open_out(path);
    out << j.dump(2) << '\n';
    check_written(out, path);
  }
}

}  // namespace pacnav
