#include "efx/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace efx {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

template <typename Int>
Int parse_int(std::string_view s) {
  const std::string t = trim(s);
  Int v{};
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || t.empty())
    throw std::invalid_argument("expected an integer, got '" + t + "'");
  return v;
}

bool parse_bool(std::string_view s) {
  const std::string t = lower(trim(s));
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw std::invalid_argument("expected true or false, got '" + t + "'");
}

bool is_auto(std::string_view s) { return lower(trim(s)) == "auto"; }

std::vector<Vec2> parse_starts(std::string_view s) {
  std::vector<Vec2> out;
  std::string text(s);
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    std::replace(item.begin(), item.end(), ',', ' ');
    std::istringstream xy(item);
    std::string xs, ys, extra;
    if (!(xy >> xs >> ys) || (xy >> extra))
      throw std::invalid_argument("expected 'x,y' pairs separated by ';'");
    out.push_back({parse_number(xs), parse_number(ys)});
    if (!std::isfinite(out.back().x) || !std::isfinite(out.back().y))
      throw std::invalid_argument("start coordinates must be finite");
  }
  if (out.empty()) throw std::invalid_argument("at least one start is required");
  return out;
}

double positive(double v) {
  if (!(v > 0.0)) throw std::invalid_argument("must be positive");
  return v;
}

double non_negative(double v) {
  if (!(v >= 0.0)) throw std::invalid_argument("must be >= 0");
  return v;
}

double positive_or_auto(std::string_view s) { return is_auto(s) ? 0.0 : positive(parse_number(s)); }

std::string auto_or(double v) { return v > 0.0 ? format_number(v) : "auto"; }

}  // namespace

ScenarioError::ScenarioError(std::string key, int line, const std::string& what)
    : std::invalid_argument((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                            (key.empty() ? std::string() : key + ": ") + what),
      key_(std::move(key)),
      line_(line) {}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_number failed");
  return std::string(buf, p);
}

double parse_number(std::string_view s) {
  std::string t = lower(trim(s));
  if (t == "inf" || t == "+inf" || t == "infinity") return std::numeric_limits<double>::infinity();
  if (t == "-inf" || t == "-infinity") return -std::numeric_limits<double>::infinity();
  if (!t.empty() && t.front() == '+') t.erase(0, 1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || p != t.data() + t.size() || std::isnan(v))
    throw std::invalid_argument("expected a number, got '" + trim(s) + "'");
  return v;
}

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "schema_version", "world",         "starts",         "n_robots",     "r_comm",
      "d_s",            "v_max",         "dt",             "coverage_threshold",
      "stuck_timeout",  "max_sim_time",  "seed",           "policy",       "share_positions",
      "success_mode",   "k_f_base",      "k_r",            "sigma_r",      "alpha",
      "sigma_d",        "epsilon_d",     "h_f_aggregate",  "k_ref",        "arrival_tolerance",
      "ray_count"};
  return keys;
}

bool is_scenario_key(std::string_view key) {
  const auto& keys = scenario_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

void apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value,
                   const std::filesystem::path& base_dir, int line) {
  if (!is_scenario_key(key)) throw ScenarioError(key, line, "unknown key");
  const std::string v = trim(value);
  try {
    if (key == "schema_version") {
      if (parse_int<int>(v) != kScenarioSchemaVersion)
        throw std::invalid_argument("unsupported version (expected " +
                                    std::to_string(kScenarioSchemaVersion) + ")");
    } else if (key == "world") {
      if (v.empty()) throw std::invalid_argument("empty path");
      std::filesystem::path p(v);
      if (p.is_relative()) p = base_dir / p;
      cfg.world = std::filesystem::absolute(p).lexically_normal();
    } else if (key == "starts") {
      cfg.starts = parse_starts(v);
    } else if (key == "n_robots") {
      const int n = parse_int<int>(v);
      if (n <= 0) throw std::invalid_argument("must be positive");
      cfg.n_robots = n;
    } else if (key == "r_comm") {
      cfg.r_comm = non_negative(parse_number(v));
    } else if (key == "d_s") {
      cfg.field.sensor_range = positive(parse_number(v));
    } else if (key == "v_max") {
      cfg.v_max = positive(parse_number(v));
    } else if (key == "dt") {
      cfg.dt = positive(parse_number(v));
    } else if (key == "coverage_threshold") {
      cfg.coverage_threshold = positive(parse_number(v));
    } else if (key == "stuck_timeout") {
      cfg.stuck_timeout = positive(parse_number(v));
    } else if (key == "max_sim_time") {
      cfg.max_sim_time = positive(parse_number(v));
    } else if (key == "seed") {
      cfg.seed = parse_int<std::uint64_t>(v);
    } else if (key == "policy") {
      const auto p = parse_policy(lower(v));
      if (!p) throw std::invalid_argument("expected mef or greedy, got '" + v + "'");
      cfg.policy = *p;
    } else if (key == "share_positions") {
      cfg.share_positions = parse_bool(v);
    } else if (key == "success_mode") {
      const std::string m = lower(v);
      if (m == "own")
        cfg.success_mode = SuccessMode::Own;
      else if (m == "merged")
        cfg.success_mode = SuccessMode::Merged;
      else if (m == "none")
        cfg.success_mode = SuccessMode::None;
      else
        throw std::invalid_argument("expected own, merged or none, got '" + v + "'");
    } else if (key == "k_f_base") {
      cfg.field.k_f_base = positive(parse_number(v));
    } else if (key == "k_r") {
      cfg.field.k_r = positive(parse_number(v));
    } else if (key == "sigma_r") {
      cfg.field.sigma_r = positive(parse_number(v));
    } else if (key == "alpha") {
      cfg.field.alpha = non_negative(parse_number(v));
    } else if (key == "sigma_d") {
      cfg.field.sigma_d = non_negative(parse_number(v));
    } else if (key == "epsilon_d") {
      cfg.field.epsilon_d = positive_or_auto(v);
    } else if (key == "h_f_aggregate") {
      const std::string m = lower(v);
      if (m == "min")
        cfg.field.aggregate = FrontierAggregate::Min;
      else if (m == "sum")
        cfg.field.aggregate = FrontierAggregate::Sum;
      else
        throw std::invalid_argument("expected min or sum, got '" + v + "'");
    } else if (key == "k_ref") {
      cfg.k_ref = positive(parse_number(v));
    } else if (key == "arrival_tolerance") {
      cfg.arrival_tolerance = positive_or_auto(v);
    } else if (key == "ray_count") {
      if (is_auto(v)) {
        cfg.ray_count = 0;
      } else {
        const int n = parse_int<int>(v);
        if (n <= 0) throw std::invalid_argument("must be positive");
        cfg.ray_count = n;
      }
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScenarioError(key, line, e.what());
  }
}

std::pair<std::string, std::string> split_override(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos) throw ScenarioError(arg, 0, "expected key=value");
  return {trim(arg.substr(0, eq)), trim(arg.substr(eq + 1))};
}

namespace {

struct ParsedLine {
  std::string key;
  std::string value;
  int line;
};

std::vector<ParsedLine> parse_lines(std::istream& in) {
  std::vector<ParsedLine> out;
  std::set<std::string> seen;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ScenarioError("", line, "expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    if (!is_scenario_key(key)) throw ScenarioError(key, line, "unknown key");
    if (!seen.insert(key).second) throw ScenarioError(key, line, "duplicate key");
    out.push_back({std::move(key), trim(body.substr(eq + 1)), line});
  }
  return out;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues out;
  for (auto& p : parse_lines(in)) out.emplace_back(std::move(p.key), std::move(p.value));
  return out;
}

ScenarioConfig parse_scenario(std::istream& in, const std::filesystem::path& base_dir) {
  ScenarioConfig cfg;
  bool has_world = false;
  bool has_starts = false;
  for (const auto& p : parse_lines(in)) {
    apply_setting(cfg, p.key, p.value, base_dir, p.line);
    has_world |= p.key == "world";
    has_starts |= p.key == "starts";
  }
  if (!has_world) throw ScenarioError("world", 0, "missing required key");
  if (!has_starts) throw ScenarioError("starts", 0, "missing required key");
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("", 0, "cannot open scenario file " + path.string());
  return parse_scenario(in, std::filesystem::absolute(path).parent_path());
}

KeyValues echo_scenario(const ScenarioConfig& cfg) {
  const std::size_t n =
      cfg.n_robots > 0 ? static_cast<std::size_t>(cfg.n_robots) : cfg.starts.size();
  std::string starts;
  for (std::size_t k = 0; k < std::min(n, cfg.starts.size()); ++k) {
    if (k) starts += "; ";
    starts += format_number(cfg.starts[k].x) + "," + format_number(cfg.starts[k].y);
  }
  const auto& f = cfg.field;
  return {
      {"schema_version", std::to_string(kScenarioSchemaVersion)},
      {"world", cfg.world.string()},
      {"starts", starts},
      {"n_robots", std::to_string(n)},
      {"r_comm", format_number(cfg.r_comm)},
      {"d_s", format_number(f.sensor_range)},
      {"v_max", format_number(cfg.v_max)},
      {"dt", format_number(cfg.dt)},
      {"coverage_threshold", format_number(cfg.coverage_threshold)},
      {"stuck_timeout", format_number(cfg.stuck_timeout)},
      {"max_sim_time", format_number(cfg.max_sim_time)},
      {"seed", std::to_string(cfg.seed)},
      {"policy", to_string(cfg.policy)},
      {"share_positions", cfg.share_positions ? "true" : "false"},
      {"success_mode", to_string(cfg.success_mode)},
      {"k_f_base", format_number(f.k_f_base)},
      {"k_r", format_number(f.k_r)},
      {"sigma_r", format_number(f.sigma_r)},
      {"alpha", format_number(f.alpha)},
      {"sigma_d", format_number(f.sigma_d)},
      {"epsilon_d", auto_or(f.epsilon_d)},
      {"h_f_aggregate", f.aggregate == FrontierAggregate::Min ? "min" : "sum"},
      {"k_ref", format_number(cfg.k_ref)},
      {"arrival_tolerance", auto_or(cfg.arrival_tolerance)},
      {"ray_count", cfg.ray_count > 0 ? std::to_string(cfg.ray_count) : "auto"},
  };
}

std::string scenario_to_text(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : echo_scenario(cfg)) out += k + " = " + v + "\n";
  return out;
}

nlohmann::ordered_json scenario_to_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : echo_scenario(cfg)) j[k] = v;
  return j;
}

ScenarioConfig scenario_from_json(const nlohmann::ordered_json& j) {
  if (!j.is_object()) throw ScenarioError("", 0, "config must be a JSON object");
  std::ostringstream text;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw ScenarioError(k, 0, "value must be a string");
    text << k << " = " << v.get<std::string>() << "\n";
  }
  std::istringstream in(text.str());
  return parse_scenario(in, std::filesystem::current_path());
}

bool equivalent(const ScenarioConfig& a, const ScenarioConfig& b) {
  return echo_scenario(a) == echo_scenario(b);
}

namespace {

nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json xy(Vec2 p) { return nlohmann::ordered_json::array({p.x, p.y}); }

}  // namespace

nlohmann::ordered_json stats_to_json(const BatchStats& s) {
  nlohmann::ordered_json j;
  j["t_bar"] = opt(s.t_bar);
  j["sd_t"] = opt(s.sd_t);
  j["rsd_t_percent"] = opt(s.rsd_t);
  j["r_success_percent"] = s.r_success;
  j["n_success"] = s.n_success;
  j["n_total"] = s.n_total;
  j["sd_convention"] = kSdConvention;
  return j;
}

nlohmann::ordered_json run_summary_json(const ScenarioConfig& cfg, const RunRecord& rec) {
  nlohmann::ordered_json j;
  j["schema_version"] = kScenarioSchemaVersion;
  j["config"] = scenario_to_json(cfg);
  nlohmann::ordered_json r;
  r["seed"] = rec.seed;
  r["success"] = rec.success;
  r["termination"] = to_string(rec.termination);
  r["T"] = rec.time;
  r["ticks"] = rec.ticks;
  r["final_coverage"] = rec.final_coverage;
  r["planning_cycles"] = rec.planning_cycles;
  r["edge_events"] = rec.edge_events.size();
  r["goal_events"] = rec.goal_events.size();
  r["rendezvous_events"] = rec.rendezvous_events.size();
  j["result"] = r;
  return j;
}

void write_event_log(std::ostream& out, const RunRecord& rec) {
  std::size_t e = 0, r = 0, g = 0;
  const auto tick_of = [](const auto& v, std::size_t k) {
    return k < v.size() ? v[k].tick : std::numeric_limits<std::int64_t>::max();
  };
  while (e < rec.edge_events.size() || r < rec.rendezvous_events.size() ||
         g < rec.goal_events.size()) {
    const auto te = tick_of(rec.edge_events, e);
    const auto tr = tick_of(rec.rendezvous_events, r);
    const auto tg = tick_of(rec.goal_events, g);
    nlohmann::ordered_json j;
    if (te <= tr && te <= tg) {
      const EdgeEvent& ev = rec.edge_events[e++];
      j["tick"] = ev.tick;
      j["type"] = to_string(ev.type);
      j["i"] = ev.i;
      j["j"] = ev.j;
    } else if (tr <= tg) {
      const RendezvousEvent& ev = rec.rendezvous_events[r++];
      j["tick"] = ev.tick;
      j["type"] = "rendezvous";
      j["i"] = ev.i;
      j["j"] = ev.j;
    } else {
      const GoalEvent& ev = rec.goal_events[g++];
      j["tick"] = ev.tick;
      j["type"] = "goal";
      j["time"] = ev.time;
      j["robot"] = ev.robot;
      j["trigger"] = to_string(ev.trigger);
      j["cell"] = nlohmann::ordered_json::array({ev.cell.row, ev.cell.col});
      j["goal"] = xy(ev.goal);
      j["pos_pre"] = xy(ev.pos_pre);
      j["t_ref"] = ev.t_ref;
    }
    out << j.dump() << '\n';
  }
}

void write_coverage_csv(std::ostream& out, const RunRecord& rec) {
  out << "tick,best_own,merged\n";
  for (const CoverageSample& s : rec.coverage)
    out << s.tick << ',' << format_number(s.best_own) << ',' << format_number(s.merged) << '\n';
}

void write_field_csv(std::ostream& out, const EntropyField& field) {
  out << "row,col,x,y,h_f,h_r,h_total\n";
  for (int r = 0; r < field.rows; ++r) {
    for (int c = 0; c < field.cols; ++c) {
      const std::size_t i = field.index({r, c});
      out << r << ',' << c << ',' << format_number((c + 0.5) * field.resolution) << ','
          << format_number((r + 0.5) * field.resolution) << ',' << format_number(field.h_f[i])
          << ',' << format_number(field.h_r[i]) << ',' << format_number(field.h_total[i])
          << '\n';
    }
  }
}

}  // namespace efx
