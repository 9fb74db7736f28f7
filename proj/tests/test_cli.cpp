#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "efx/cli.hpp"
#include "efx/scenario_io.hpp"

using namespace efx;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = EFX_TEST_FIXTURES;

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "efx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  const int code = cli::parse_and_dispatch(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("efx_cli_test_" + name);
  fs::remove_all(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("validate-map") {
  auto ok = invoke({"validate-map", (kFixtures / "small_room.map").string()});
  CHECK(ok.code == cli::kExitOk);
  CHECK(ok.out.find("rows=50") != std::string::npos);

  auto bad = invoke({"validate-map", (kFixtures / "ragged.map").string()});
  CHECK(bad.code == cli::kExitInvalid);
  CHECK(bad.err.find("line 4") != std::string::npos);
}

TEST_CASE("run writes its outputs") {
  const fs::path dir = fresh_dir("run");
  auto r = invoke({"run", (kFixtures / "small.scn").string(), "r_comm=inf", "--out", dir.string()});
  REQUIRE(r.code == cli::kExitOk);
  for (const char* f : {"run.json", "events.jsonl", "coverage.csv", "batch.csv"})
    CHECK(fs::exists(dir / f));
  const auto j = nlohmann::json::parse(slurp(dir / "run.json"));
  CHECK(j.dump().find("inf") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("batch config echo reproduces the run") {
  const fs::path dir = fresh_dir("batch");
  auto r = invoke({"batch", (kFixtures / "small.scn").string(), "rounds=2", "--jobs", "1",
                   "--out", dir.string()});
  REQUIRE(r.code == cli::kExitOk);
  const auto j = nlohmann::ordered_json::parse(slurp(dir / "stats.json"));
  CHECK(j.at("rounds") == 2);
  auto echoed = scenario_from_json(j.at("config"));
  auto original = load_scenario(kFixtures / "small.scn");
  CHECK(echoed.seed == original.seed);
  CHECK(echoed.world == original.world);
  const auto csv = slurp(dir / "batch.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  fs::remove_all(dir);
}

TEST_CASE("output directory falls back to the environment") {
  const fs::path dir = fresh_dir("env");
  ::setenv(cli::kOutDirEnv, dir.string().c_str(), 1);
  auto r = invoke({"dump-field", (kFixtures / "small.scn").string(), "--robot", "1"});
  ::unsetenv(cli::kOutDirEnv);
  REQUIRE(r.code == cli::kExitOk);
  CHECK(fs::exists(dir / "field_r1_t1.csv"));
  fs::remove_all(dir);
}

TEST_CASE("sweep schedule") {
  auto r = invoke({"sweep", (kFixtures / "small.scn").string(), "r_comm=2,4,6,inf",
                   "n_robots=2,3,4", "rounds=20", "--dry-run"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("scheduled 240 rounds in 12 cells") != std::string::npos);

  const auto plan = cli::plan_sweep(load_scenario(kFixtures / "small.scn"),
                                    {"r_comm=2,inf", "n_robots=2,3", "policy=mef,greedy"});
  REQUIRE(plan.cells.size() == 8);
  CHECK(plan.cells[0].r_comm == 2.0);
  CHECK(plan.cells[0].n_robots == 2);
  CHECK(plan.cells[1].policy == PolicyKind::GreedyFrontier);
  CHECK(std::isinf(plan.cells[4].r_comm));
}

TEST_CASE("exit codes") {
  CHECK(invoke({}).code == cli::kExitInvalid);
  CHECK(invoke({"frobnicate"}).code == cli::kExitInvalid);
  CHECK(invoke({"run", (kFixtures / "small.scn").string(), "bogus=1"}).code == cli::kExitInvalid);
  CHECK(invoke({"run", (kFixtures / "small.scn").string(), "d_s=-1"}).code == cli::kExitInvalid);
  CHECK(invoke({"run", (kFixtures / "missing.scn").string()}).code == cli::kExitInvalid);
  CHECK(invoke({"dump-field", (kFixtures / "small.scn").string(), "--robot", "9"}).code ==
        cli::kExitInvalid);

  // A regular file where the output directory should go.
  const fs::path blocker = fresh_dir("blocker");
  std::ofstream(blocker) << "x";
  auto r = invoke({"run", (kFixtures / "small.scn").string(), "max_sim_time=1", "--out",
                   (blocker / "sub").string()});
  CHECK(r.code == cli::kExitRuntime);
  fs::remove(blocker);
}
