#include "efx/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "efx/map_io.hpp"
#include "efx/metrics.hpp"
#include "efx/scenario_io.hpp"

namespace efx::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (out.empty()) out.push_back(v);
  return out;
}

bool is_sweep_key(const std::string& k) { return k == "r_comm" || k == "n_robots" || k == "policy"; }

std::size_t parse_rounds(const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long n = std::stoll(v, &pos);
    if (pos != v.size() || n <= 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    throw ScenarioError("rounds", 0, "expected a positive integer, got '" + v + "'");
  }
}

/// Applies key=value overrides; "rounds" is consumed into `rounds` when given.
ScenarioConfig with_overrides(ScenarioConfig cfg, const std::vector<std::string>& tokens,
                              std::size_t* rounds = nullptr) {
  for (const std::string& t : tokens) {
    auto [k, v] = split_override(t);
    if (k == "rounds" && rounds) {
      *rounds = parse_rounds(v);
      continue;
    }
    apply_setting(cfg, k, v, fs::current_path());
  }
  return cfg;
}

fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "efx_out";
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name);
  if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
  return out;
}

unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Common {
  std::string scenario;
  std::vector<std::string> overrides;
  std::string out;
};

int cmd_run(const Common& c) {
  ScenarioConfig cfg = with_overrides(load_scenario(c.scenario), c.overrides);
  const OccupancyGrid truth = load_map(cfg.world);
  cfg.resolve(truth);
  cfg.validate(truth);
  const RunRecord rec = run(cfg, truth);

  const fs::path dir = output_dir(c.out);
  open_out(dir, "run.json") << run_summary_json(cfg, rec).dump(2) << '\n';
  auto events = open_out(dir, "events.jsonl");
  write_event_log(events, rec);
  auto cov = open_out(dir, "coverage.csv");
  write_coverage_csv(cov, rec);
  auto csv = open_out(dir, "batch.csv");
  csv << batch_csv_header() << '\n' << to_csv_line(make_row(cfg, rec)) << '\n';

  std::cout << "termination=" << to_string(rec.termination) << " T=" << format_number(rec.time)
            << " coverage=" << format_number(rec.final_coverage) << " out=" << dir.string()
            << '\n';
  return kExitOk;
}

void write_batch_outputs(const fs::path& dir, const nlohmann::ordered_json& stats,
                         const std::vector<RoundRow>& rows) {
  auto csv = open_out(dir, "batch.csv");
  csv << batch_csv_header() << '\n';
  for (const RoundRow& r : rows) csv << to_csv_line(r) << '\n';
  open_out(dir, "stats.json") << stats.dump(2) << '\n';
}

int cmd_batch(const Common& c, std::size_t rounds, unsigned jobs) {
  ScenarioConfig cfg = with_overrides(load_scenario(c.scenario), c.overrides, &rounds);
  const OccupancyGrid truth = load_map(cfg.world);
  cfg.resolve(truth);
  cfg.validate(truth);
  const auto seeds = consecutive_seeds(cfg.seed, rounds);
  const BatchResult res = run_batch(cfg, truth, rounds, seeds, cfg.policy, jobs);

  nlohmann::ordered_json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["config"] = scenario_to_json(cfg);
  j["rounds"] = rounds;
  j["stats"] = stats_to_json(res.stats);
  const fs::path dir = output_dir(c.out);
  write_batch_outputs(dir, j, res.rows);

  std::cout << "rounds=" << rounds << " R_success=" << format_number(res.stats.r_success)
            << " T_bar=" << (res.stats.t_bar ? format_number(*res.stats.t_bar) : "none")
            << " out=" << dir.string() << '\n';
  return kExitOk;
}

int cmd_sweep(const Common& c, std::size_t rounds, unsigned jobs, bool dry_run) {
  const ScenarioConfig base = load_scenario(c.scenario);
  SweepPlan plan = plan_sweep(base, c.overrides);
  if (rounds > 0) plan.rounds = rounds;
  std::cout << "scheduled " << plan.total_rounds() << " rounds in " << plan.cells.size()
            << " cells\n";
  if (dry_run) return kExitOk;

  const OccupancyGrid truth = load_map(base.world);
  for (ScenarioConfig& cell : plan.cells) {
    cell.resolve(truth);
    cell.validate(truth);
  }
  nlohmann::ordered_json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["rounds"] = plan.rounds;
  j["sd_convention"] = kSdConvention;
  j["cells"] = nlohmann::ordered_json::array();
  std::vector<RoundRow> rows;
  for (const ScenarioConfig& cell : plan.cells) {
    const auto seeds = consecutive_seeds(cell.seed, plan.rounds);
    const BatchResult res = run_batch(cell, truth, plan.rounds, seeds, cell.policy, jobs);
    rows.insert(rows.end(), res.rows.begin(), res.rows.end());
    nlohmann::ordered_json e;
    e["config"] = scenario_to_json(cell);
    e["stats"] = stats_to_json(res.stats);
    j["cells"].push_back(e);
    std::cout << "r_comm=" << format_number(cell.r_comm) << " n_robots=" << cell.n_robots
              << " policy=" << to_string(cell.policy)
              << " R_success=" << format_number(res.stats.r_success)
              << " T_bar=" << (res.stats.t_bar ? format_number(*res.stats.t_bar) : "none") << '\n';
  }
  write_batch_outputs(output_dir(c.out), j, rows);
  return kExitOk;
}

int cmd_validate_map(const std::string& path) {
  const OccupancyGrid g = load_map(path);
  std::cout << "ok rows=" << g.rows() << " cols=" << g.cols()
            << " resolution=" << format_number(g.resolution())
            << " free=" << g.count(CellState::Free)
            << " occupied=" << g.count(CellState::Occupied) << '\n';
  return kExitOk;
}

int cmd_dump_field(const Common& c, int robot, long long ticks) {
  ScenarioConfig cfg = with_overrides(load_scenario(c.scenario), c.overrides);
  const OccupancyGrid truth = load_map(cfg.world);
  Simulation sim(cfg, truth);
  if (robot < 0 || robot >= sim.config().n_robots)
    throw ScenarioError("robot", 0, "must be in [0, n_robots)");
  for (long long k = 0; k < ticks && !sim.finished(); ++k) sim.step();
  const fs::path dir = output_dir(c.out);
  const std::string name = "field_r" + std::to_string(robot) + "_t" + std::to_string(sim.tick()) + ".csv";
  auto out = open_out(dir, name);
  write_field_csv(out, sim.field_for(robot));
  std::cout << (dir / name).string() << '\n';
  return kExitOk;
}

}  // namespace

SweepPlan plan_sweep(const ScenarioConfig& base, const std::vector<std::string>& tokens) {
  SweepPlan plan;
  ScenarioConfig fixed = base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const std::string& t : tokens) {
    auto [k, v] = split_override(t);
    if (k == "rounds") {
      plan.rounds = parse_rounds(v);
    } else if (is_sweep_key(k)) {
      axes.emplace_back(k, split_list(v));
    } else {
      apply_setting(fixed, k, v, fs::current_path());
    }
  }
  const std::vector<std::string> order = {"r_comm", "n_robots", "policy"};
  std::vector<ScenarioConfig> cells = {fixed};
  for (const std::string& key : order) {
    for (const auto& [k, values] : axes) {
      if (k != key) continue;
      std::vector<ScenarioConfig> next;
      for (const ScenarioConfig& c : cells) {
        for (const std::string& v : values) {
          ScenarioConfig cell = c;
          apply_setting(cell, k, v, fs::current_path());
          next.push_back(std::move(cell));
        }
      }
      cells = std::move(next);
    }
  }
  plan.cells = std::move(cells);
  return plan;
}

int parse_and_dispatch(int argc, const char* const* argv) {
  CLI::App app{"Multi-robot entropy-field exploration simulator"};
  app.require_subcommand(1);

  Common common;
  std::size_t rounds = 0;
  unsigned jobs = default_jobs();
  bool dry_run = false;
  int robot = 0;
  long long ticks = 1;
  std::string map_path;

  const std::string out_help =
      std::string("output directory (default $") + kOutDirEnv + " or ./efx_out)";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("scenario", common.scenario, "scenario file")->required();
    sub->add_option("overrides", common.overrides, "key=value overrides");
    sub->add_option("--out", common.out, out_help);
  };

  auto* run_cmd = app.add_subcommand("run", "run one simulation");
  add_common(run_cmd);
  auto* batch_cmd = app.add_subcommand("batch", "run seeds seed..seed+rounds-1");
  add_common(batch_cmd);
  batch_cmd->add_option("--rounds", rounds, "number of rounds (or rounds=N)");
  batch_cmd->add_option("--jobs", jobs, "worker threads");
  auto* sweep_cmd = app.add_subcommand("sweep", "batch matrix over r_comm, n_robots, policy lists");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--rounds", rounds, "rounds per cell (or rounds=N)");
  sweep_cmd->add_option("--jobs", jobs, "worker threads");
  sweep_cmd->add_flag("--dry-run", dry_run, "print the schedule only");
  auto* vmap_cmd = app.add_subcommand("validate-map", "check a map file");
  vmap_cmd->add_option("map", map_path, "map file")->required();
  auto* field_cmd = app.add_subcommand("dump-field", "write one robot's field as CSV");
  add_common(field_cmd);
  field_cmd->add_option("--robot", robot, "robot id (zero-based)");
  field_cmd->add_option("--ticks", ticks, "ticks to simulate first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(common);
    if (batch_cmd->parsed()) return cmd_batch(common, rounds == 0 ? 1 : rounds, jobs);
    if (sweep_cmd->parsed()) return cmd_sweep(common, rounds, jobs, dry_run);
    if (vmap_cmd->parsed()) return cmd_validate_map(map_path);
    if (field_cmd->parsed()) return cmd_dump_field(common, robot, ticks);
  } catch (const MapFormatError& e) {
    std::cerr << "efx: invalid map: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "efx: invalid scenario: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "efx: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}

}  // namespace efx::cli
