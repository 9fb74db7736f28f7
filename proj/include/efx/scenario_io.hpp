#pragma once

// Scenario files are flat "key = value" text, one entry per line, '#' starts
// a comment. Keys (schema_version 1):
//
//   schema_version      1
//   world               map file, relative to the scenario file
//   starts              "x,y; x,y; ..." start positions in meters
//   n_robots            robots used (first n of starts); default len(starts)
//   r_comm              high-speed link range in meters, or "inf"
//   d_s                 sensor range, m
//   v_max, dt           m/s, s
//   coverage_threshold  (0, 1]
//   stuck_timeout       s
//   max_sim_time        s
//   seed                RNG seed
//   policy              mef | greedy
//   share_positions     true | false (low-speed position layer)
//   success_mode        own | merged | none
//   k_f_base, k_r, sigma_r, alpha, sigma_d, epsilon_d   field parameters
//   h_f_aggregate       min | sum
//   k_ref, arrival_tolerance, ray_count
//
// Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "efx/metrics.hpp"
#include "efx/sim_engine.hpp"

namespace efx {

inline constexpr int kScenarioSchemaVersion = 1;

/// Invalid scenario content. `key()` names the field; `line()` is 1-based or
/// 0 when the value came from an override.
class ScenarioError : public std::invalid_argument {
 public:
  ScenarioError(std::string key, int line, const std::string& what);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Shortest text that reads back to the same double; "inf" for infinity.
std::string format_number(double v);
/// Accepts decimal numbers and inf/infinity. Throws std::invalid_argument.
double parse_number(std::string_view s);

const std::vector<std::string>& scenario_keys();
bool is_scenario_key(std::string_view key);

/// Applies one key. Relative `world` paths resolve against `base_dir`.
void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir, int line = 0);

/// Splits "key=value". Throws ScenarioError when '=' is missing.
std::pair<std::string, std::string> split_override(const std::string& arg);

KeyValues parse_key_values(std::istream& in);
ScenarioConfig parse_scenario(std::istream& in, const std::filesystem::path& base_dir);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// Every effective parameter as canonical text, in scenario_keys() order.
KeyValues echo_scenario(const ScenarioConfig& cfg);
std::string scenario_to_text(const ScenarioConfig& cfg);
nlohmann::ordered_json scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(const nlohmann::ordered_json& j);

bool equivalent(const ScenarioConfig& a, const ScenarioConfig& b);

nlohmann::ordered_json stats_to_json(const BatchStats& s);
nlohmann::ordered_json run_summary_json(const ScenarioConfig& cfg, const RunRecord& rec);

/// JSON-lines event log: edge, rendezvous and goal events ordered by tick.
void write_event_log(std::ostream& out, const RunRecord& rec);
void write_coverage_csv(std::ostream& out, const RunRecord& rec);
void write_field_csv(std::ostream& out, const EntropyField& field);

}  // namespace efx
