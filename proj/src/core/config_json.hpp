#pragma once

#include "core/bandit.hpp"
#include "core/harness.hpp"
#include "core/learning.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ants {

// "shannon" or "tsallis2".
EntropyKind kind_from_string(const std::string& name);

// Parsed `loop` run description: the loop schedule plus the planner it drives.
struct LoopRunConfig {
  Algo algo = Algo::ants_s;
  std::string env_name = "chain8";
  int n_passes = 100;
  int depth_limit = 12;
  double gamma = 0.99;
  LoopConfig loop;
};

// Parsed `bandit` run description: one trial template fanned out over seeds;
// seed i runs with trial seed base_seed + i.
struct BanditRunConfig {
  BanditTrial trial;
  int seeds = 100;
  std::uint64_t base_seed = 0;
};

struct ReportRunConfig {
  std::vector<std::string> files;
};

// Library planner-handle description: a named preset plus search overrides.
struct PlannerHandleConfig {
  Algo algo = Algo::ants_s;
  std::string env_name = "chain8";
  int n_passes = 100;
  int depth_limit = 12;
  double gamma = 0.99;
  std::uint64_t seed = 0;
};

// Each parser takes raw JSON text, fills defaults for absent keys, rejects
// unknown keys, and throws std::invalid_argument on any defect.  Value
// validation beyond types happens in the run functions.
ExperimentConfig parse_experiment_config(const std::string& json_text);
LoopRunConfig parse_loop_config(const std::string& json_text);
BanditRunConfig parse_bandit_config(const std::string& json_text);
SweepConfig parse_sweep_config(const std::string& json_text);
ReportRunConfig parse_report_config(const std::string& json_text);
PlannerHandleConfig parse_planner_config(const std::string& json_text);

}  // namespace ants
