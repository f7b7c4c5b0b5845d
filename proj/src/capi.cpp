#include "ofdma_sched.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ofdma/config.hpp"
#include "ofdma/engine.hpp"
#include "ofdma/overhead.hpp"
#include "ofdma/report_io.hpp"

struct ofdma_config {
  ofdma::ExperimentConfig cfg;
};

struct ofdma_report {
  ofdma::ExperimentConfig cfg;
  std::string command;
  std::vector<ofdma::RunReport> runs;
  std::optional<ofdma::SearchResult> search;
};

namespace {

thread_local std::string g_last_error;

ofdma_status Fail(ofdma_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

ofdma_status FromCode(ofdma::ErrorCode code) {
  switch (code) {
    case ofdma::ErrorCode::kInvalidInput:
      return OFDMA_ERR_INVALID_ARGUMENT;
    case ofdma::ErrorCode::kConfig:
      return OFDMA_ERR_CONFIG;
    case ofdma::ErrorCode::kIo:
      return OFDMA_ERR_IO;
    case ofdma::ErrorCode::kInfeasible:
      return OFDMA_ERR_INFEASIBLE;
  }
  return OFDMA_ERR_INTERNAL;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
ofdma_status Guard(Fn&& fn) {
  try {
    fn();
    return OFDMA_OK;
  } catch (const ofdma::Error& e) {
    return Fail(FromCode(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(OFDMA_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(OFDMA_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(OFDMA_ERR_INTERNAL, "unknown error");
  }
}

ofdma::PolicyKind ToKind(ofdma_policy_kind kind) {
  switch (kind) {
    case OFDMA_POLICY_FIXED:
      return ofdma::PolicyKind::kFixed;
    case OFDMA_POLICY_THROUGHPUT_OPTIMAL:
      return ofdma::PolicyKind::kThroughputOptimal;
    case OFDMA_POLICY_DPPDU:
      return ofdma::PolicyKind::kDppdu;
    case OFDMA_POLICY_EADPPDU:
      return ofdma::PolicyKind::kEadppdu;
  }
  ofdma::ThrowInvalid("unknown policy kind");
}

int FromKind(ofdma::PolicyKind kind) {
  switch (kind) {
    case ofdma::PolicyKind::kFixed:
      return OFDMA_POLICY_FIXED;
    case ofdma::PolicyKind::kThroughputOptimal:
      return OFDMA_POLICY_THROUGHPUT_OPTIMAL;
    case ofdma::PolicyKind::kDppdu:
      return OFDMA_POLICY_DPPDU;
    case ofdma::PolicyKind::kEadppdu:
      return OFDMA_POLICY_EADPPDU;
  }
  return -1;
}

}  // namespace

extern "C" {

const char* ofdma_version(void) { return ofdma::kSoftwareVersion; }

const char* ofdma_last_error(void) { return g_last_error.c_str(); }

const char* ofdma_status_name(ofdma_status status) {
  switch (status) {
    case OFDMA_OK:
      return "ok";
    case OFDMA_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case OFDMA_ERR_CONFIG:
      return "config";
    case OFDMA_ERR_IO:
      return "io";
    case OFDMA_ERR_INFEASIBLE:
      return "infeasible";
    case OFDMA_ERR_INTERNAL:
      return "internal";
  }
  return "unknown";
}

ofdma_status ofdma_config_load(const char* path, ofdma_config** out) {
  if (!path || !out) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new ofdma_config{ofdma::ParseConfigFile(path)};
  });
}

ofdma_status ofdma_config_parse(const char* json_text, ofdma_config** out) {
  if (!json_text || !out) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    *out = new ofdma_config{ofdma::ParseConfigText(json_text)};
  });
}

void ofdma_config_free(ofdma_config* config) { delete config; }

ofdma_status ofdma_config_set_seed(ofdma_config* config, uint64_t seed) {
  if (!config) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null config");
  config->cfg.sim.seed = seed;
  return OFDMA_OK;
}

ofdma_status ofdma_config_set_horizon(ofdma_config* config,
                                      uint64_t horizon_slots) {
  if (!config) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null config");
  if (horizon_slots < static_cast<uint64_t>(config->cfg.sim.num_groups))
    return Fail(OFDMA_ERR_CONFIG, "horizon_slots: must be >= L");
  config->cfg.sim.horizon_slots = horizon_slots;
  return OFDMA_OK;
}

ofdma_status ofdma_config_set_trace(ofdma_config* config, int enabled) {
  if (!config) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null config");
  config->cfg.sim.trace = enabled != 0;
  return OFDMA_OK;
}

ofdma_status ofdma_config_set_out_dir(ofdma_config* config,
                                      const char* out_dir) {
  if (!config || !out_dir) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] { config->cfg.out_dir = out_dir; });
}

ofdma_status ofdma_config_out_dir(const ofdma_config* config, char* buf,
                                  size_t buf_len) {
  if (!config || !buf) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  const std::string& dir = config->cfg.out_dir;
  if (dir.size() + 1 > buf_len)
    return Fail(OFDMA_ERR_INVALID_ARGUMENT, "buffer too small for out_dir");
  std::memcpy(buf, dir.c_str(), dir.size() + 1);
  return OFDMA_OK;
}

ofdma_status ofdma_config_v_list(const ofdma_config* config, double* values,
                                 size_t cap, size_t* count) {
  if (!config || !count) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  const auto& v = config->cfg.v_list;
  *count = v.size();
  for (size_t i = 0; i < v.size() && i < cap && values; ++i) values[i] = v[i];
  return OFDMA_OK;
}

ofdma_status ofdma_run(const ofdma_config* config, ofdma_report** out) {
  if (!config || !out) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    auto report = std::make_unique<ofdma_report>();
    report->cfg = config->cfg;
    report->command = "run";
    report->runs.push_back(ofdma::Run(config->cfg.sim));
    *out = report.release();
  });
}

ofdma_status ofdma_sweep(const ofdma_config* config, const double* v_values,
                         size_t count, ofdma_report** out) {
  if (!config || !out || (count > 0 && !v_values))
    return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    auto report = std::make_unique<ofdma_report>();
    report->cfg = config->cfg;
    report->cfg.v_list.assign(v_values, v_values + count);
    report->command = "sweep";
    report->runs = ofdma::VSweep(config->cfg.sim, report->cfg.v_list);
    *out = report.release();
  });
}

ofdma_status ofdma_search(const ofdma_config* config, ofdma_problem problem,
                          ofdma_report** out) {
  if (!config || !out) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    if (problem != OFDMA_PROBLEM_PADDING && problem != OFDMA_PROBLEM_ENERGY)
      ofdma::ThrowInvalid("unknown search problem");
    auto report = std::make_unique<ofdma_report>();
    report->cfg = config->cfg;
    report->command = "search";
    report->search = ofdma::HypotheticalFixedSearch(
        config->cfg.sim, problem == OFDMA_PROBLEM_PADDING
                             ? ofdma::SearchProblem::kPadding
                             : ofdma::SearchProblem::kEnergy);
    if (report->search->best)
      report->runs.push_back(report->search->candidates[*report->search->best]);
    *out = report.release();
  });
}

size_t ofdma_report_count(const ofdma_report* report) {
  return report ? report->runs.size() : 0;
}

ofdma_status ofdma_report_metrics(const ofdma_report* report, size_t index,
                                  ofdma_metrics* out) {
  if (!report || !out) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= report->runs.size())
    return Fail(OFDMA_ERR_INVALID_ARGUMENT, "report index out of range");
  const ofdma::RunReport& r = report->runs[index];
  const ofdma::GroupMetrics& m = r.headline();
  *out = ofdma_metrics{};
  out->policy = FromKind(r.config.policy.kind);
  out->v = r.config.policy.v_param;
  out->fixed_ts_ms = r.config.policy.fixed_ts.ms();
  out->measured_slots = m.measured_slots;
  out->avg_h_tot_ms = m.avg_h_tot_ms;
  out->avg_ts_ms = m.avg_ts_ms;
  out->avg_s_tot = m.avg_s_tot;
  out->avg_x_sum = m.avg_x_sum;
  out->avg_y_sum = m.avg_y_sum;
  out->avg_exchange_us = m.avg_exchange_us;
  for (int q = 0; q < 4; ++q) out->x_sum_quarter_mean[q] = m.x_sum_quarter_mean[q];
  out->num_users = m.avg_f.size();
  out->avg_f = m.avg_f.data();
  out->avg_e_mj = m.avg_e_mj.data();
  return OFDMA_OK;
}

ofdma_status ofdma_report_search_best(const ofdma_report* report,
                                      double* best_ts_ms) {
  if (!report || !best_ts_ms)
    return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  if (!report->search)
    return Fail(OFDMA_ERR_INVALID_ARGUMENT, "report is not a search result");
  const ofdma::SearchResult& s = *report->search;
  if (!s.best) return Fail(OFDMA_ERR_INFEASIBLE, s.diagnostic);
  *best_ts_ms = s.candidates[*s.best].config.policy.fixed_ts.ms();
  return OFDMA_OK;
}

ofdma_status ofdma_report_write(const ofdma_report* report,
                                const char* out_dir) {
  if (!report || !out_dir) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    ofdma::ExperimentConfig cfg = report->cfg;
    cfg.out_dir = out_dir;
    const ofdma::SearchResult* search =
        report->search ? &*report->search : nullptr;
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("metrics.csv", ofdma::MetricsCsv(report->runs));
    if (search) files.emplace_back("search.csv", ofdma::SearchCsv(*search));
    if (cfg.sim.trace)
      files.emplace_back("traces.csv", ofdma::TracesCsv(report->runs));
    files.emplace_back("run.json",
                       ofdma::RunJson(cfg, report->command, report->runs, search));
    ofdma::WriteArtifacts(out_dir, files);
  });
}

void ofdma_report_free(ofdma_report* report) { delete report; }

ofdma_status ofdma_trigger_frame_time_us(int num_users, double* out_us) {
  if (!out_us) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out_us = ofdma::MacOverhead().TriggerFrameTime(num_users).us();
  });
}

ofdma_status ofdma_exchange_time_us(ofdma_policy_kind kind, double ts_ms,
                                    int num_users, double* out_us) {
  if (!out_us) return Fail(OFDMA_ERR_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    *out_us = ofdma::MacOverhead()
                  .TotalExchangeTime(ToKind(kind), ofdma::Duration::FromMs(ts_ms),
                                     num_users)
                  .us();
  });
}

int ofdma_dppdu_breakeven(double ts_fixed_ms, double t_min_ms) {
  int result = -1;
  Guard([&] {
    result = ofdma::MacOverhead().DppduBreakeven(
                 ofdma::Duration::FromMs(ts_fixed_ms),
                 ofdma::Duration::FromMs(t_min_ms))
                 ? 1
                 : 0;
  });
  return result;
}

}  // extern "C"
