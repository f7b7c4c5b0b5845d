#include "ofdma/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ofdma {

namespace {

using nlohmann::json;

const std::set<std::string>& KnownKeys() {
  static const std::set<std::string> keys = {
      "N", "L", "K", "policy", "v", "v_list", "fixed_ts_ms",
      "ts_grid_ms", "ts_grid_start_ms", "ts_grid_step_ms", "ts_grid_stop_ms",
      "ts_max_ms", "traffic_mode", "duration_mean_ms", "duration_shape",
      "duration_cv", "reference_rate_bps", "rate_set_bps", "arrival_mean_bits",
      "fairness_target", "energy_budget_mj", "energy_budget_factor",
      "tx_power_w", "tx_power_dbm", "sifs_us", "pifs_us",
      "mac_phy_preamble_us", "per_user_info_us", "horizon_slots", "seed",
      "warmup_fraction", "trace", "trace_stride", "out_dir", "carry_over",
      "padding_objective_unit"};
  return keys;
}

double GetNumber(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) ThrowConfig(key + ": must be a number");
  return v.get<double>();
}

std::int64_t GetInteger(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) ThrowConfig(key + ": must be an integer");
  return v.get<std::int64_t>();
}

std::uint64_t GetUnsigned(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    ThrowConfig(key + ": must be a non-negative integer");
  return v.get<std::uint64_t>();
}

// Shape accepts a number or the string "inf" (deterministic durations).
double ShapeValue(const json& v, const std::string& key) {
  if (v.is_string() && v.get<std::string>() == "inf")
    return std::numeric_limits<double>::infinity();
  if (!v.is_number()) ThrowConfig(key + ": entries must be numbers or \"inf\"");
  return v.get<double>();
}

// A scalar broadcasts to every user; an array must have exactly K entries.
template <typename Conv>
std::vector<double> PerUser(const json& j, const std::string& key, int k,
                            Conv conv) {
  const json& v = j.at(key);
  const auto n = static_cast<std::size_t>(k);
  if (v.is_array()) {
    if (v.size() != n)
      ThrowConfig(key + ": expected " + std::to_string(k) +
                  " entries (one per user), got " + std::to_string(v.size()));
    std::vector<double> out;
    for (const json& e : v) out.push_back(conv(e, key));
    return out;
  }
  return std::vector<double>(n, conv(v, key));
}

double PlainNumber(const json& v, const std::string& key) {
  if (!v.is_number()) ThrowConfig(key + ": entries must be numbers");
  return v.get<double>();
}

std::vector<double> NumberList(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_array()) ThrowConfig(key + ": must be an array of numbers");
  std::vector<double> out;
  for (const json& e : v) out.push_back(PlainNumber(e, key));
  return out;
}

json ShapeJson(double shape) {
  if (std::isinf(shape)) return "inf";
  return shape;
}

}  // namespace

ExperimentConfig ParseConfigText(const std::string& text) {
  json j;
  const bool blank = text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (blank) {
    j = json::object();
  } else {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      ThrowConfig(std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (!j.is_object()) ThrowConfig("config: top level must be a JSON object");

  std::string missing;
  for (const char* key : {"N", "L", "K", "policy"})
    if (!j.contains(key)) missing += std::string(missing.empty() ? "" : ", ") + key;
  if (!missing.empty()) ThrowConfig("missing required fields: " + missing);
  for (const auto& item : j.items())
    if (!KnownKeys().count(item.key()))
      ThrowConfig(item.key() + ": unknown key");

  ExperimentConfig cfg;
  SimConfig& sim = cfg.sim;

  const std::int64_t n = GetInteger(j, "N");
  const std::int64_t l = GetInteger(j, "L");
  const std::int64_t k = GetInteger(j, "K");
  if (l < 1) ThrowConfig("L: must be >= 1");
  if (k < 1) ThrowConfig("K: must be >= 1");
  if (n != l * k)
    ThrowConfig("N: must equal L*K (got N=" + std::to_string(n) +
                ", L*K=" + std::to_string(l * k) + ")");
  cfg.total_users = static_cast<int>(n);
  sim.num_groups = static_cast<int>(l);
  sim.users_per_group = static_cast<int>(k);
  const int users = sim.users_per_group;

  if (!j.at("policy").is_string()) ThrowConfig("policy: must be a string");
  sim.policy.kind = PolicyKindFromString(j.at("policy").get<std::string>());

  // Traffic.
  sim.traffic = TrafficModel::Default(users);
  std::string mode = "duration";
  if (j.contains("traffic_mode")) {
    if (!j.at("traffic_mode").is_string())
      ThrowConfig("traffic_mode: must be a string");
    mode = j.at("traffic_mode").get<std::string>();
  }
  if (mode == "duration") {
    sim.traffic.mode = TrafficMode::kDuration;
  } else if (mode == "rate_set") {
    sim.traffic.mode = TrafficMode::kRateSet;
  } else {
    ThrowConfig("traffic_mode: expected duration|rate_set, got '" + mode + "'");
  }
  if (j.contains("duration_mean_ms")) {
    const auto means = PerUser(j, "duration_mean_ms", users, PlainNumber);
    for (int u = 0; u < users; ++u) sim.traffic.durations[u].mean_ms = means[u];
  }
  if (j.contains("duration_shape") && j.contains("duration_cv"))
    ThrowConfig("duration_cv: give either duration_shape or duration_cv, not both");
  if (j.contains("duration_shape")) {
    const auto shapes = PerUser(j, "duration_shape", users, ShapeValue);
    for (int u = 0; u < users; ++u) sim.traffic.durations[u].shape = shapes[u];
  }
  if (j.contains("duration_cv")) {
    const auto cvs = PerUser(j, "duration_cv", users, PlainNumber);
    for (int u = 0; u < users; ++u) {
      if (!(cvs[u] >= 0.0)) ThrowConfig("duration_cv: must be >= 0");
      sim.traffic.durations[u].shape =
          cvs[u] == 0.0 ? std::numeric_limits<double>::infinity()
                        : 1.0 / (cvs[u] * cvs[u]);
    }
  }
  if (j.contains("reference_rate_bps"))
    sim.traffic.reference_rate_bps = GetNumber(j, "reference_rate_bps");
  if (j.contains("carry_over")) {
    if (!j.at("carry_over").is_boolean())
      ThrowConfig("carry_over: must be true or false");
    sim.traffic.carry_over = j.at("carry_over").get<bool>();
  }
  if (j.contains("rate_set_bps"))
    sim.traffic.rate_set_bps = NumberList(j, "rate_set_bps");
  if (j.contains("arrival_mean_bits"))
    sim.traffic.arrival_mean_bits =
        PerUser(j, "arrival_mean_bits", users, PlainNumber);

  // Scheduling-duration grid.
  std::vector<Duration> grid_values;
  if (j.contains("ts_grid_ms")) {
    for (double v : NumberList(j, "ts_grid_ms")) {
      if (!(v >= 0.0)) ThrowConfig("ts_grid_ms: values must be >= 0");
      grid_values.push_back(Duration::FromMs(v));
    }
    if (grid_values.empty()) ThrowConfig("ts_grid_ms: must not be empty");
  } else {
    const double start =
        j.contains("ts_grid_start_ms") ? GetNumber(j, "ts_grid_start_ms") : 0.05;
    const double step =
        j.contains("ts_grid_step_ms") ? GetNumber(j, "ts_grid_step_ms") : 0.05;
    const double stop =
        j.contains("ts_grid_stop_ms") ? GetNumber(j, "ts_grid_stop_ms") : 12.0;
    grid_values = DurationGrid::Range(start, step, stop,
                                      Duration::FromMs(std::max(stop, 0.0)))
                      .values();
  }
  Duration ts_max = grid_values.back();
  if (j.contains("ts_max_ms")) {
    const double v = GetNumber(j, "ts_max_ms");
    if (!(v > 0.0)) ThrowConfig("ts_max_ms: must be > 0");
    ts_max = Duration::FromMs(v);
  }
  sim.policy.grid = DurationGrid(std::move(grid_values), ts_max);

  if (j.contains("v_list")) {
    cfg.v_list = NumberList(j, "v_list");
    for (double v : cfg.v_list)
      if (!(v > 0.0)) ThrowConfig("v_list: every V must be > 0");
  }
  const bool dynamic = sim.policy.kind == PolicyKind::kDppdu ||
                       sim.policy.kind == PolicyKind::kEadppdu;
  if (j.contains("v")) {
    sim.policy.v_param = GetNumber(j, "v");
  } else if (dynamic) {
    if (cfg.v_list.empty())
      ThrowConfig("v: required for policy " + ToString(sim.policy.kind));
    sim.policy.v_param = cfg.v_list.front();
  }
  if (j.contains("padding_objective_unit")) {
    const json& u = j.at("padding_objective_unit");
    if (u == "s")
      sim.policy.padding_unit_ms = 1000.0;
    else if (u == "ms")
      sim.policy.padding_unit_ms = 1.0;
    else
      ThrowConfig("padding_objective_unit: expected \"s\" or \"ms\"");
  }
  if (sim.policy.kind == PolicyKind::kFixed) {
    if (!j.contains("fixed_ts_ms"))
      ThrowConfig("fixed_ts_ms: required for policy fixed");
    sim.policy.fixed_ts = Duration::FromMs(GetNumber(j, "fixed_ts_ms"));
    if (!sim.policy.grid.Contains(sim.policy.fixed_ts))
      ThrowConfig("fixed_ts_ms: must be one of the ts_grid values");
    // Snap to the exact grid value.
    sim.policy.fixed_ts = sim.policy.grid[sim.policy.grid.LowerBound(
        Duration::FromMs(std::max(0.0, sim.policy.fixed_ts.ms() - 1e-9)))];
  } else if (j.contains("fixed_ts_ms")) {
    sim.policy.fixed_ts = Duration::FromMs(GetNumber(j, "fixed_ts_ms"));
  }

  // Power and constraints.
  if (j.contains("tx_power_w") && j.contains("tx_power_dbm"))
    ThrowConfig("tx_power_dbm: give either tx_power_w or tx_power_dbm, not both");
  if (j.contains("tx_power_w")) sim.tx_power_watts = GetNumber(j, "tx_power_w");
  if (j.contains("tx_power_dbm"))
    sim.tx_power_watts = std::pow(10.0, GetNumber(j, "tx_power_dbm") / 10.0) / 1000.0;

  sim.fairness_targets =
      j.contains("fairness_target")
          ? PerUser(j, "fairness_target", users, PlainNumber)
          : std::vector<double>(static_cast<std::size_t>(users), 0.65);

  if (j.contains("energy_budget_mj") && j.contains("energy_budget_factor"))
    ThrowConfig(
        "energy_budget_factor: give either energy_budget_mj or "
        "energy_budget_factor, not both");
  if (j.contains("energy_budget_mj")) {
    sim.energy_budgets_mj = PerUser(j, "energy_budget_mj", users, PlainNumber);
  } else {
    if (sim.traffic.mode != TrafficMode::kDuration)
      ThrowConfig("energy_budget_mj: required in rate_set traffic mode");
    const double factor = j.contains("energy_budget_factor")
                              ? GetNumber(j, "energy_budget_factor")
                              : 1.2;
    if (!(factor > 0.0)) ThrowConfig("energy_budget_factor: must be > 0");
    for (const DurationLaw& law : sim.traffic.durations)
      sim.energy_budgets_mj.push_back(factor * law.mean_ms * sim.tx_power_watts);
  }

  // MAC timing.
  if (j.contains("sifs_us")) sim.timing.sifs_us = GetNumber(j, "sifs_us");
  if (j.contains("pifs_us")) sim.timing.pifs_us = GetNumber(j, "pifs_us");
  if (j.contains("mac_phy_preamble_us"))
    sim.timing.mac_phy_preamble_us = GetNumber(j, "mac_phy_preamble_us");
  if (j.contains("per_user_info_us"))
    sim.timing.per_user_info_us = GetNumber(j, "per_user_info_us");

  // Run control.
  sim.horizon_slots = j.contains("horizon_slots")
                          ? GetUnsigned(j, "horizon_slots")
                          : 200'000ULL * static_cast<std::uint64_t>(l);
  if (j.contains("seed")) sim.seed = GetUnsigned(j, "seed");
  if (j.contains("warmup_fraction"))
    sim.warmup_fraction = GetNumber(j, "warmup_fraction");
  if (j.contains("trace")) {
    if (!j.at("trace").is_boolean()) ThrowConfig("trace: must be true or false");
    sim.trace = j.at("trace").get<bool>();
  }
  if (j.contains("trace_stride")) sim.trace_stride = GetUnsigned(j, "trace_stride");
  if (j.contains("out_dir")) {
    if (!j.at("out_dir").is_string()) ThrowConfig("out_dir: must be a string");
    cfg.out_dir = j.at("out_dir").get<std::string>();
  }

  sim.Validate();
  return cfg;
}

ExperimentConfig ParseConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfigText(buf.str());
}

std::string ConfigToJson(const ExperimentConfig& config, int indent) {
  const SimConfig& sim = config.sim;
  json j;
  j["N"] = config.total_users;
  j["L"] = sim.num_groups;
  j["K"] = sim.users_per_group;
  j["policy"] = ToString(sim.policy.kind);
  j["v"] = sim.policy.v_param;
  if (!config.v_list.empty()) j["v_list"] = config.v_list;
  if (sim.policy.kind == PolicyKind::kFixed)
    j["fixed_ts_ms"] = sim.policy.fixed_ts.ms();
  json grid = json::array();
  for (Duration d : sim.policy.grid.values()) grid.push_back(d.ms());
  j["ts_grid_ms"] = grid;
  j["ts_max_ms"] = sim.policy.ts_max().ms();
  j["padding_objective_unit"] = sim.policy.padding_unit_ms == 1.0 ? "ms" : "s";

  const TrafficModel& t = sim.traffic;
  j["carry_over"] = t.carry_over;
  if (t.mode == TrafficMode::kDuration) {
    j["traffic_mode"] = "duration";
    json means = json::array();
    json shapes = json::array();
    for (const DurationLaw& law : t.durations) {
      means.push_back(law.mean_ms);
      shapes.push_back(ShapeJson(law.shape));
    }
    j["duration_mean_ms"] = means;
    j["duration_shape"] = shapes;
    j["reference_rate_bps"] = t.reference_rate_bps;
  } else {
    j["traffic_mode"] = "rate_set";
    j["rate_set_bps"] = t.rate_set_bps;
    j["arrival_mean_bits"] = t.arrival_mean_bits;
  }

  j["fairness_target"] = sim.fairness_targets;
  j["energy_budget_mj"] = sim.energy_budgets_mj;
  j["tx_power_w"] = sim.tx_power_watts;
  j["sifs_us"] = sim.timing.sifs_us;
  j["pifs_us"] = sim.timing.pifs_us;
  j["mac_phy_preamble_us"] = sim.timing.mac_phy_preamble_us;
  j["per_user_info_us"] = sim.timing.per_user_info_us;
  j["horizon_slots"] = sim.horizon_slots;
  j["seed"] = sim.seed;
  j["warmup_fraction"] = sim.warmup_fraction;
  j["trace"] = sim.trace;
  j["trace_stride"] = sim.trace_stride;
  j["out_dir"] = config.out_dir;
  return j.dump(indent);
}

std::uint64_t ConfigHash(const ExperimentConfig& config) {
  // The output location does not influence any emitted number.
  ExperimentConfig keyed = config;
  keyed.out_dir.clear();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : ConfigToJson(keyed, -1)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace ofdma
