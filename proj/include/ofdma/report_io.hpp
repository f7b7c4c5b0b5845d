#pragma once

// CSV/JSON artifacts. Column definitions live in docs/csv_schema.md.

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ofdma/config.hpp"
#include "ofdma/engine.hpp"

namespace ofdma {

inline constexpr const char* kSoftwareName = "ofdma-sched";
inline constexpr const char* kSoftwareVersion = "1.0.0";

// Shortest decimal that round-trips the double.
std::string FormatNumber(double v);

// One row per report, headline group.
std::string MetricsCsv(std::span<const RunReport> reports);
// Metrics columns plus a feasibility flag, one row per grid candidate.
std::string SearchCsv(const SearchResult& search);
// Downsampled group-1 trajectories of every report that carried a trace.
std::string TracesCsv(std::span<const RunReport> reports);

std::string RunJson(const ExperimentConfig& config, std::string_view command,
                    std::span<const RunReport> reports,
                    const SearchResult* search);

// Writes each (file name, content) pair under dir. Every file goes to a
// temporary name first and is renamed into place once complete.
void WriteArtifacts(const std::string& dir,
                    const std::vector<std::pair<std::string, std::string>>& files);

}  // namespace ofdma
