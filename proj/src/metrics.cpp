#include "efx/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "efx/scenario_io.hpp"

namespace efx {

BatchStats compute_stats(std::span<const RoundRow> rows) {
  BatchStats s;
  s.n_total = rows.size();
  double sum = 0.0;
  for (const RoundRow& r : rows) {
    if (!r.success) continue;
    ++s.n_success;
    sum += r.time;
  }
  s.r_success = s.n_total == 0 ? 0.0
                               : 100.0 * static_cast<double>(s.n_success) /
                                     static_cast<double>(s.n_total);
  if (s.n_success == 0) return s;
  const double mean = sum / static_cast<double>(s.n_success);
  double ss = 0.0;
  for (const RoundRow& r : rows)
    if (r.success) ss += (r.time - mean) * (r.time - mean);
  s.t_bar = mean;
  s.sd_t = std::sqrt(ss / static_cast<double>(s.n_success));
  if (s.n_success >= 2) s.rsd_t = 100.0 * *s.sd_t / mean;
  return s;
}

RoundRow make_row(const ScenarioConfig& scenario, const RunRecord& record) {
  return {record.seed,    scenario.policy, scenario.r_comm,        scenario.n_robots,
          record.success, record.time,     record.final_coverage};
}

std::vector<std::uint64_t> consecutive_seeds(std::uint64_t first, std::size_t rounds) {
  std::vector<std::uint64_t> seeds(rounds);
  for (std::size_t k = 0; k < rounds; ++k) seeds[k] = first + k;
  return seeds;
}

BatchResult run_batch(const ScenarioConfig& scenario, const OccupancyGrid& truth,
                      std::size_t rounds, std::span<const std::uint64_t> seeds,
                      PolicyKind policy, unsigned jobs, bool keep_records) {
  if (seeds.size() != rounds)
    throw std::invalid_argument("seeds: expected " + std::to_string(rounds) + " seeds, got " +
                                std::to_string(seeds.size()));
  BatchResult out;
  out.rows.resize(rounds);
  std::vector<RunRecord> records(rounds);

  auto run_round = [&](std::size_t k) {
    ScenarioConfig cfg = scenario;
    cfg.seed = seeds[k];
    cfg.policy = policy;
    RunRecord rec = run(cfg, truth);
    cfg.resolve(truth);
    out.rows[k] = make_row(cfg, rec);
    if (keep_records) records[k] = std::move(rec);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(rounds)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < rounds; ++k) run_round(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < rounds; k = next++) {
          try {
            run_round(k);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }
  out.stats = compute_stats(out.rows);
  if (keep_records) out.records = std::move(records);
  return out;
}

std::string batch_csv_header() { return "seed,policy,r_comm,n_robots,success,T,final_coverage"; }

std::string to_csv_line(const RoundRow& row) {
  std::ostringstream out;
  out << row.seed << ',' << to_string(row.policy) << ',' << format_number(row.r_comm) << ','
      << row.n_robots << ',' << (row.success ? 1 : 0) << ',' << format_number(row.time) << ','
      << format_number(row.final_coverage);
  return out.str();
}

RoundRow parse_csv_line(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) f.push_back(item);
  if (f.size() != 7) throw std::invalid_argument("batch row: expected 7 fields");
  RoundRow r;
  r.seed = std::stoull(f[0]);
  const auto pol = parse_policy(f[1]);
  if (!pol) throw std::invalid_argument("batch row: unknown policy '" + f[1] + "'");
  r.policy = *pol;
  r.r_comm = parse_number(f[2]);
  r.n_robots = std::stoi(f[3]);
  r.success = f[4] == "1";
  r.time = parse_number(f[5]);
  r.final_coverage = parse_number(f[6]);
  return r;
}

}  // namespace efx
