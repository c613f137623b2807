// pacnav: run single missions, seeded batches, generate/inspect forests and
// dump the built-in scenario presets.
//
// Exit codes: 0 all missions completed, 2 some mission incomplete, 1 error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pacnav/error.hpp"
#include "pacnav/forest.hpp"
#include "pacnav/mission.hpp"
#include "pacnav/scenario.hpp"

namespace {

struct ScenarioFlags {
  std::string config_path;
  std::string preset_name;
  std::optional<std::uint64_t> seed;
  std::optional<long long> max_steps;
};

void add_scenario_flags(CLI::App* app, ScenarioFlags& f) {
  auto* cfg = app->add_option("--config", f.config_path, "Scenario config file (JSON)")
                  ->check(CLI::ExistingFile);
  std::vector<std::string> names = pacnav::preset_names();
  app->add_option("--preset", f.preset_name, "Built-in scenario preset")
      ->check(CLI::IsMember(names))
      ->excludes(cfg);
  app->add_option("--seed", f.seed, "Master seed (overrides the config)");
  app->add_option("--max-steps", f.max_steps, "Step budget (overrides the config)")
      ->check(CLI::PositiveNumber);
}

pacnav::ScenarioConfig resolve(const ScenarioFlags& f) {
  pacnav::ScenarioConfig c;
  if (!f.config_path.empty()) {
    c = pacnav::load_config(f.config_path);
  } else {
    c = pacnav::preset(f.preset_name.empty() ? "1a" : f.preset_name);
  }
  if (f.seed) c.master_seed = *f.seed;
  if (f.max_steps) c.max_steps = *f.max_steps;
  c.validate();
  return c;
}

void print_summary(const pacnav::MissionLog& log) {
  const auto& s = log.summary;
  std::printf("scenario        %s (seed %llu, forest seed %llu, %zu trees)\n",
              log.config.name.c_str(), static_cast<unsigned long long>(log.config.master_seed),
              static_cast<unsigned long long>(log.forest.seed), log.forest.trees.size());
  if (s.completed) {
    std::printf("completed       yes, step %lld (%.1f s)\n",
                static_cast<long long>(*s.completion_step), *s.completion_time(log.config.dt));
  } else {
    std::printf("completed       no (%lld steps)\n", static_cast<long long>(s.steps));
  }
  std::printf("min pair dist   %.3f m\n", s.min_pair_distance);
  std::printf("min tree dist   %.3f m\n", s.min_tree_distance);
  std::printf("mean order      %.3f\n", s.mean_order);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized swarm navigation simulator"};
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("--quiet,-q", quiet, "Suppress console summaries");

  ScenarioFlags run_flags;
  std::string run_out;
  std::string run_forest;
  auto* run = app.add_subcommand("run", "Simulate one mission");
  add_scenario_flags(run, run_flags);
  run->add_option("--out-dir", run_out, "Directory for time series and summary");
  run->add_option("--forest", run_forest, "Replay a forest file instead of generating one")
      ->check(CLI::ExistingFile);
  run->add_flag("--quiet,-q", quiet, "Suppress console summaries");

  ScenarioFlags batch_flags;
  std::string batch_out;
  std::size_t runs = 10;
  std::vector<std::uint64_t> forest_seeds;
  auto* batch = app.add_subcommand("batch", "Simulate independently seeded missions");
  add_scenario_flags(batch, batch_flags);
  batch->add_option("--runs", runs, "Number of missions")->check(CLI::PositiveNumber);
  batch->add_option("--forest-seeds", forest_seeds, "Explicit forest seed per run")
      ->delimiter(',');
  batch->add_option("--out-dir", batch_out, "Directory for per-run outputs and the summary");
  batch->add_flag("--quiet,-q", quiet, "Suppress console summaries");

  auto* forest = app.add_subcommand("forest", "Generate or inspect a forest file");
  forest->require_subcommand(1);
  ScenarioFlags gen_flags;
  std::string gen_out;
  auto* gen = forest->add_subcommand("generate", "Write the forest a scenario would use");
  add_scenario_flags(gen, gen_flags);
  gen->add_option("--out", gen_out, "Forest file to write")->required();
  std::string inspect_path;
  double inspect_radius = 2.5;
  auto* inspect = forest->add_subcommand("inspect", "Print statistics of a forest file");
  inspect->add_option("path", inspect_path, "Forest file")->required()->check(CLI::ExistingFile);
  inspect->add_option("--reaction-radius", inspect_radius,
                      "Radius used in the density figure (m)");

  std::string preset_name;
  std::string preset_out;
  auto* preset_cmd = app.add_subcommand("preset", "Print or save a built-in scenario config");
  preset_cmd->add_option("name", preset_name, "Preset name")
      ->required()
      ->check(CLI::IsMember(pacnav::preset_names()));
  preset_cmd->add_option("--out", preset_out, "File to write instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const pacnav::ScenarioConfig config = resolve(run_flags);
      const pacnav::MissionLog log = run_forest.empty()
                                         ? pacnav::run_mission(config)
                                         : pacnav::run_mission(config, pacnav::load_forest(run_forest));
      if (!run_out.empty()) pacnav::write_outputs(log, run_out);
      if (!quiet) print_summary(log);
      return log.summary.completed ? 0 : 2;
    }

    if (*batch) {
      const pacnav::ScenarioConfig config = resolve(batch_flags);
      auto on_run = [&](const pacnav::BatchRun& r, const pacnav::MissionLog& log) {
        if (!batch_out.empty()) {
          char name[32];
          std::snprintf(name, sizeof name, "run_%03zu", r.index);
          pacnav::write_outputs(log, std::filesystem::path(batch_out) / name);
        }
        if (!quiet) {
          std::printf("run %3zu  seed %-20llu  %s", r.index,
                      static_cast<unsigned long long>(r.master_seed),
                      r.summary.completed ? "completed" : "incomplete");
          if (r.summary.completed) std::printf("  %.1f s", *r.summary.completion_time(config.dt));
          std::printf("\n");
        }
      };
      const pacnav::BatchSummary summary = pacnav::run_batch(config, runs, forest_seeds, on_run);
      if (!batch_out.empty()) pacnav::write_batch_outputs(summary, batch_out);
      if (!quiet) {
        std::printf("completed %zu/%zu", summary.completed, summary.runs.size());
        if (summary.completion_time.count > 0) {
          std::printf("  time mean %.1f s [%.1f, %.1f]", summary.completion_time.mean,
                      summary.completion_time.min, summary.completion_time.max);
        }
        std::printf("\n");
      }
      return summary.completed == summary.runs.size() ? 0 : 2;
    }

    if (*gen) {
      const pacnav::ScenarioConfig config = resolve(gen_flags);
      const pacnav::Forest f = pacnav::generate_forest(config.forest_spec());
      pacnav::save_forest(f, gen_out);
      if (!quiet) std::printf("wrote %zu trees to %s\n", f.trees.size(), gen_out.c_str());
      return 0;
    }

    if (*preset_cmd) {
      const std::string text = pacnav::config_to_json(pacnav::preset(preset_name));
      if (preset_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(preset_out);
        out << text;
        if (!out) throw pacnav::Error(pacnav::ErrorCode::kIo, "cannot write " + preset_out);
      }
      return 0;
    }

    if (*inspect) {
      const pacnav::Forest f = pacnav::load_forest(inspect_path);
      double min_gap = -1.0;
      for (std::size_t i = 0; i < f.trees.size(); ++i) {
        for (std::size_t j = i + 1; j < f.trees.size(); ++j) {
          const double d = pacnav::distance(f.trees[i].center, f.trees[j].center);
          if (min_gap < 0.0 || d < min_gap) min_gap = d;
        }
      }
      std::printf("seed            %llu\n", static_cast<unsigned long long>(f.seed));
      std::printf("area            %.2f x %.2f m at (%.2f, %.2f)\n", f.area.width(),
                  f.area.height(), f.area.min.x, f.area.min.y);
      std::printf("trees           %zu\n", f.trees.size());
      std::printf("density         %.4f (reaction radius %.2f m)\n",
                  pacnav::forest_density(f.trees.size(), inspect_radius, f.area.extent()),
                  inspect_radius);
      if (min_gap >= 0.0) std::printf("min spacing     %.3f m\n", min_gap);
      std::printf("keep-clear      %zu zones\n", f.keep_clear.size());
      return 0;
    }
  } catch (const pacnav::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
