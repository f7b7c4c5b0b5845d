#pragma once

// Experiment configuration: a flat JSON object. See docs/config.md for keys.

#include <cstdint>
#include <string>
#include <vector>

#include "ofdma/engine.hpp"

namespace ofdma {

struct ExperimentConfig {
  int total_users = 100;  // N = L * K
  SimConfig sim;
  std::vector<double> v_list;
  std::string out_dir = "out";
};

// Throws Error(kConfig) naming the offending key, or Error(kIo) when the file
// cannot be read.
ExperimentConfig ParseConfigFile(const std::string& path);
ExperimentConfig ParseConfigText(const std::string& text);

// Fully resolved config as flat JSON; parsing it back yields the same config.
std::string ConfigToJson(const ExperimentConfig& config, int indent = 2);

// FNV-1a over the compact resolved JSON.
std::uint64_t ConfigHash(const ExperimentConfig& config);

}  // namespace ofdma
