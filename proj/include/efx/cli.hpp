#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "efx/sim_engine.hpp"

namespace efx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitRuntime = 2;

/// Output directory used when --out is absent.
inline constexpr const char* kOutDirEnv = "EFX_OUT_DIR";

/// Batch matrix of a sweep: one config per (r_comm, n_robots, policy)
/// combination, r_comm outermost, each run for `rounds` seeds.
struct SweepPlan {
  std::vector<ScenarioConfig> cells;
  std::size_t rounds = 1;

  std::size_t total_rounds() const { return cells.size() * rounds; }
};

/// Expands "key=v1,v2,..." tokens over r_comm, n_robots and policy; other
/// tokens are single-valued overrides and "rounds=N" sets the round count.
/// Throws ScenarioError on unknown keys or malformed values.
SweepPlan plan_sweep(const ScenarioConfig& base, const std::vector<std::string>& tokens);

/// Entry point of the efx executable. Returns the process exit code.
int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace efx::cli
