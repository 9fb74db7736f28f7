#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "efx/policy.hpp"
#include "efx/sim_engine.hpp"

namespace efx {

/// Aggregates over a batch of rounds. Time statistics use successful rounds
/// only; the standard deviation is the population one (divide by n).
struct BatchStats {
  std::optional<double> t_bar;  // s, absent without successes
  std::optional<double> sd_t;   // s, absent without successes
  std::optional<double> rsd_t;  // %, needs at least two successes
  double r_success = 0.0;       // %
  std::size_t n_success = 0;
  std::size_t n_total = 0;

  friend bool operator==(const BatchStats&, const BatchStats&) = default;
};

inline constexpr const char* kSdConvention = "population";

/// One batch.csv row.
struct RoundRow {
  std::uint64_t seed = 0;
  PolicyKind policy = PolicyKind::Mef;
  double r_comm = 0.0;
  int n_robots = 0;
  bool success = false;
  double time = 0.0;
  double final_coverage = 0.0;

  friend bool operator==(const RoundRow&, const RoundRow&) = default;
};

BatchStats compute_stats(std::span<const RoundRow> rows);

RoundRow make_row(const ScenarioConfig& scenario, const RunRecord& record);

struct BatchResult {
  BatchStats stats;
  std::vector<RoundRow> rows;
  std::vector<RunRecord> records;
};

/// Runs `rounds` independent simulations, round k with seeds[k]. `jobs` > 1
/// spreads rounds over threads; results are ordered by round regardless.
/// Throws std::invalid_argument if seeds.size() != rounds.
BatchResult run_batch(const ScenarioConfig& scenario, const OccupancyGrid& truth,
                      std::size_t rounds, std::span<const std::uint64_t> seeds,
                      PolicyKind policy, unsigned jobs = 1, bool keep_records = false);

/// seed, seed + 1, ..., seed + rounds - 1.
std::vector<std::uint64_t> consecutive_seeds(std::uint64_t first, std::size_t rounds);

std::string batch_csv_header();
std::string to_csv_line(const RoundRow& row);
/// Parses a line produced by to_csv_line. Throws std::invalid_argument.
RoundRow parse_csv_line(const std::string& line);

}  // namespace efx
