#include "ofdma/report_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ofdma/overhead.hpp"

namespace ofdma {

namespace {

using nlohmann::json;

std::string Header(int users) {
  std::ostringstream h;
  h << "policy,v,fixed_ts_ms,group,measured_slots,avg_H_tot_ms,avg_Ts_ms,"
       "avg_S_tot";
  for (int k = 1; k <= users; ++k) h << ",avg_F_" << k;
  for (int k = 1; k <= users; ++k) h << ",avg_E_" << k << "_mJ";
  for (int k = 1; k <= users; ++k) h << ",F_ok_" << k;
  for (int k = 1; k <= users; ++k) h << ",E_ok_" << k;
  h << ",avg_X_sum,avg_Y_sum,avg_exchange_us,clamp_events";
  return h.str();
}

std::string Row(const RunReport& r) {
  const GroupMetrics& m = r.headline();
  const PolicyConfig& p = r.config.policy;
  const bool fixed = p.kind == PolicyKind::kFixed;
  const bool dynamic = p.kind == PolicyKind::kDppdu || p.kind == PolicyKind::kEadppdu;
  std::ostringstream row;
  row << ToString(p.kind) << ',' << (dynamic ? FormatNumber(p.v_param) : "")
      << ',' << (fixed ? FormatNumber(p.fixed_ts.ms()) : "") << ','
      << m.group_id << ',' << m.measured_slots << ','
      << FormatNumber(m.avg_h_tot_ms) << ',' << FormatNumber(m.avg_ts_ms) << ','
      << FormatNumber(m.avg_s_tot);
  for (double f : m.avg_f) row << ',' << FormatNumber(f);
  for (double e : m.avg_e_mj) row << ',' << FormatNumber(e);
  for (bool ok : m.fairness_ok) row << ',' << (ok ? 1 : 0);
  for (bool ok : m.energy_ok) row << ',' << (ok ? 1 : 0);
  row << ',' << FormatNumber(m.avg_x_sum) << ',' << FormatNumber(m.avg_y_sum)
      << ',' << FormatNumber(m.avg_exchange_us) << ',' << m.clamp_events;
  return row.str();
}

json GroupJson(const GroupMetrics& m) {
  json g;
  g["group"] = m.group_id;
  g["scheduled_slots"] = m.scheduled_slots;
  g["measured_slots"] = m.measured_slots;
  g["avg_H_tot_ms"] = m.avg_h_tot_ms;
  g["avg_Ts_ms"] = m.avg_ts_ms;
  g["avg_S_tot"] = m.avg_s_tot;
  g["avg_F"] = m.avg_f;
  g["avg_E_mJ"] = m.avg_e_mj;
  g["x_sum_quarter_mean"] = m.x_sum_quarter_mean;
  g["y_sum_quarter_mean"] = m.y_sum_quarter_mean;
  g["clamp_events"] = m.clamp_events;
  return g;
}

}  // namespace

std::string FormatNumber(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string MetricsCsv(std::span<const RunReport> reports) {
  if (reports.empty()) return "";
  std::ostringstream out;
  out << Header(reports.front().config.users_per_group) << '\n';
  for (const RunReport& r : reports) out << Row(r) << '\n';
  return out.str();
}

std::string SearchCsv(const SearchResult& search) {
  if (search.candidates.empty()) return "";
  std::ostringstream out;
  out << Header(search.candidates.front().config.users_per_group)
      << ",feasible\n";
  for (const RunReport& r : search.candidates) {
    const GroupMetrics& m = r.headline();
    const bool ok = search.problem == SearchProblem::kPadding
                        ? m.AllFairnessOk()
                        : m.AllEnergyOk();
    out << Row(r) << ',' << (ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string TracesCsv(std::span<const RunReport> reports) {
  std::ostringstream out;
  out << "run,policy,v,slot,round,ts_ms,X_sum,Y_sum\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const RunReport& r = reports[i];
    for (const TracePoint& p : r.trace) {
      out << i << ',' << ToString(r.config.policy.kind) << ','
          << FormatNumber(r.config.policy.v_param) << ',' << p.slot << ','
          << p.round << ',' << FormatNumber(p.ts_ms) << ','
          << FormatNumber(p.x_sum) << ',' << FormatNumber(p.y_sum) << '\n';
    }
  }
  return out.str();
}

std::string RunJson(const ExperimentConfig& config, std::string_view command,
                    std::span<const RunReport> reports,
                    const SearchResult* search) {
  const SimConfig& sim = config.sim;
  const MacOverhead overhead(sim.timing);
  json j;
  j["software"] = {{"name", kSoftwareName}, {"version", kSoftwareVersion}};
  j["command"] = std::string(command);
  j["config"] = json::parse(ConfigToJson(config, -1));
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(ConfigHash(config)));
  j["config_hash"] = hash;
  j["seed"] = sim.seed;
  j["rng"] = kRngName;
  j["timing_us"] = {
      {"sifs", sim.timing.sifs_us},
      {"pifs", sim.timing.pifs_us},
      {"mac_phy_preamble", sim.timing.mac_phy_preamble_us},
      {"per_user_info", sim.timing.per_user_info_us},
      {"trigger_frame", overhead.TriggerFrameTime(sim.users_per_group).us()},
      {"bs_frame", overhead.SingleUserFrameTime().us()},
      {"ot_frame", overhead.SingleUserFrameTime().us()},
      {"dppdu_surcharge", overhead.DynamicSurcharge().us()}};

  json runs = json::array();
  for (const RunReport& r : reports) {
    json run;
    run["policy"] = ToString(r.config.policy.kind);
    run["v"] = r.config.policy.v_param;
    if (r.config.policy.kind == PolicyKind::kFixed)
      run["fixed_ts_ms"] = r.config.policy.fixed_ts.ms();
    run["B1"] = r.bounds.b1;
    run["B2"] = r.bounds.b2;
    json groups = json::array();
    for (const GroupMetrics& m : r.groups) groups.push_back(GroupJson(m));
    run["groups"] = groups;
    runs.push_back(run);
  }
  j["runs"] = runs;

  if (search) {
    json s;
    s["problem"] = ToString(search->problem);
    s["candidates"] = search->candidates.size();
    if (search->best) {
      s["best_ts_ms"] = search->candidates[*search->best].config.policy.fixed_ts.ms();
    } else {
      s["best_ts_ms"] = nullptr;
      s["diagnostic"] = search->diagnostic;
    }
    j["search"] = s;
  }
  return j.dump(2) + "\n";
}

void WriteArtifacts(
    const std::string& dir,
    const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create output directory '" + dir + "': " + ec.message());
  for (const auto& [name, content] : files) {
    const fs::path final_path = fs::path(dir) / name;
    const fs::path tmp_path = fs::path(dir) / (name + ".tmp");
    {
      std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorCode::kIo, "cannot write '" + tmp_path.string() + "'");
      out << content;
      out.flush();
      if (!out) throw Error(ErrorCode::kIo, "short write to '" + tmp_path.string() + "'");
    }
    fs::rename(tmp_path, final_path, ec);
    if (ec) throw Error(ErrorCode::kIo, "cannot move '" + tmp_path.string() + "' into place: " + ec.message());
  }
}

}  // namespace ofdma
