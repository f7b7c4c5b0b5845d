// ofdma-sim: command-line front end over the C API.
//
//   ofdma-sim run    --config PATH [--seed U64] [--out DIR] [--horizon N] [--trace]
//   ofdma-sim sweep  --config PATH --v-list 100,500,1000 [...]
//   ofdma-sim search --config PATH --problem padding|energy [...]
//
// Failures print one JSON object to stderr and exit with the status code.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ofdma_sched.h"

namespace {

const char* PolicyName(int kind) {
  switch (kind) {
    case OFDMA_POLICY_FIXED:
      return "fixed";
    case OFDMA_POLICY_THROUGHPUT_OPTIMAL:
      return "throughput_optimal";
    case OFDMA_POLICY_DPPDU:
      return "dppdu";
    case OFDMA_POLICY_EADPPDU:
      return "eadppdu";
  }
  return "?";
}

int ReportError(ofdma_status status, const std::string& message) {
  nlohmann::json err;
  err["error"] = {{"code", ofdma_status_name(status)},
                  {"status", static_cast<int>(status)},
                  {"message", message}};
  std::fprintf(stderr, "%s\n", err.dump().c_str());
  return static_cast<int>(status);
}

int ReportError(ofdma_status status) {
  return ReportError(status, ofdma_last_error());
}

void PrintSummary(const ofdma_report* report) {
  const size_t n = ofdma_report_count(report);
  for (size_t i = 0; i < n; ++i) {
    ofdma_metrics m;
    if (ofdma_report_metrics(report, i, &m) != OFDMA_OK) continue;
    std::printf("%-18s", PolicyName(m.policy));
    if (m.policy == OFDMA_POLICY_DPPDU || m.policy == OFDMA_POLICY_EADPPDU)
      std::printf(" V=%-8g", m.v);
    if (m.policy == OFDMA_POLICY_FIXED) std::printf(" Ts=%-7g", m.fixed_ts_ms);
    std::printf(" H_tot=%.4f ms  Ts*=%.4f ms  S_tot=%.4f  F=[", m.avg_h_tot_ms,
                m.avg_ts_ms, m.avg_s_tot);
    for (size_t k = 0; k < m.num_users; ++k)
      std::printf("%s%.3f", k ? " " : "", m.avg_f[k]);
    std::printf("]\n");
  }
}

struct Common {
  std::string config_path;
  uint64_t seed = 0;
  std::string out_dir;
  uint64_t horizon = 0;
  bool trace = false;
};

CLI::Option* AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config_path, "Experiment config (JSON)")
      ->required();
  CLI::Option* seed = cmd->add_option("--seed", c.seed, "RNG seed (overrides config)");
  cmd->add_option("--out", c.out_dir, "Output directory (overrides config)");
  cmd->add_option("--horizon", c.horizon,
                  "Total simulated slots over all groups (overrides config)");
  cmd->add_flag("--trace", c.trace, "Write downsampled traces.csv");
  return seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDMA uplink scheduling-duration simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ofdma_version()));

  Common common;
  CLI::App* run_cmd = app.add_subcommand("run", "Single simulation run");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "One run per V value");
  CLI::App* search_cmd =
      app.add_subcommand("search", "Best fixed ts by exhaustive grid search");
  std::vector<CLI::Option*> seed_opts;
  for (CLI::App* cmd : {run_cmd, sweep_cmd, search_cmd})
    seed_opts.push_back(AddCommon(cmd, common));

  std::vector<double> v_list;
  sweep_cmd->add_option("--v-list", v_list, "V values, comma separated")
      ->delimiter(',');
  std::string problem = "padding";
  search_cmd->add_option("--problem", problem, "padding|energy")
      ->check(CLI::IsMember({"padding", "energy"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return ReportError(OFDMA_ERR_INVALID_ARGUMENT, e.what());
  }

  ofdma_config* config = nullptr;
  if (ofdma_status s = ofdma_config_load(common.config_path.c_str(), &config))
    return ReportError(s);

  ofdma_status s = OFDMA_OK;
  for (const CLI::Option* opt : seed_opts)
    if (opt->count() > 0) s = ofdma_config_set_seed(config, common.seed);
  if (!s && common.horizon > 0) s = ofdma_config_set_horizon(config, common.horizon);
  if (!s && common.trace) s = ofdma_config_set_trace(config, 1);
  if (!s && !common.out_dir.empty())
    s = ofdma_config_set_out_dir(config, common.out_dir.c_str());
  if (s) {
    const int rc = ReportError(s);
    ofdma_config_free(config);
    return rc;
  }

  ofdma_report* report = nullptr;
  if (*run_cmd) {
    s = ofdma_run(config, &report);
  } else if (*sweep_cmd) {
    if (v_list.empty()) {
      size_t count = 0;
      ofdma_config_v_list(config, nullptr, 0, &count);
      v_list.resize(count);
      ofdma_config_v_list(config, v_list.data(), v_list.size(), &count);
    }
    if (v_list.empty()) {
      ofdma_config_free(config);
      return ReportError(OFDMA_ERR_CONFIG,
                         "v_list: pass --v-list or set v_list in the config");
    }
    s = ofdma_sweep(config, v_list.data(), v_list.size(), &report);
  } else {
    s = ofdma_search(config,
                     problem == "energy" ? OFDMA_PROBLEM_ENERGY
                                         : OFDMA_PROBLEM_PADDING,
                     &report);
  }
  if (s) {
    const int rc = ReportError(s);
    ofdma_config_free(config);
    return rc;
  }

  char out_dir[4096];
  s = ofdma_config_out_dir(config, out_dir, sizeof(out_dir));
  if (!s) s = ofdma_report_write(report, out_dir);
  int rc = 0;
  if (s) {
    rc = ReportError(s);
  } else {
    PrintSummary(report);
    if (*search_cmd) {
      double best = 0.0;
      const ofdma_status bs = ofdma_report_search_best(report, &best);
      if (bs == OFDMA_OK)
        std::printf("best fixed ts = %g ms\n", best);
      else
        rc = ReportError(bs);
    }
    std::printf("artifacts written to %s\n", out_dir);
  }
  ofdma_report_free(report);
  ofdma_config_free(config);
  return rc;
}
