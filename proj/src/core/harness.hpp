#pragma once

#include "core/bandit.hpp"
#include "core/env.hpp"
#include "core/maxent_planner.hpp"
#include "core/puct_planner.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace ants {

// The published planner configurations the experiment tools accept by name.
enum class Algo {
  ants_s,  // adaptive temperature, Shannon regularizer
  ants_t,  // adaptive temperature, Tsallis-2 regularizer
  ments,   // fixed temperature, Shannon regularizer
  tents,   // fixed temperature, Tsallis-2 regularizer
  puct,    // count-based baseline
};

std::string to_string(Algo algo);
Algo algo_from_string(const std::string& name);

// Complete parameter bundle for one named configuration.  Count-based runs
// read only `puct`; the regularized planners read `maxent` and `ctl`.
struct Preset {
  MaxEntConfig maxent;
  TemperatureController ctl;
  PuctConfig puct;
};

Preset make_preset(Algo algo);

// Uniform planning surface over both planner families; backs the episode
// drivers and the shared-library planner handle.
class PlannerHandle {
 public:
  virtual ~PlannerHandle() = default;
  virtual int act(int state) = 0;       // plan from `state`, return the action
  virtual double tau() const = 0;       // operating temperature after planning
  virtual void reset() = 0;             // drop the tree; temperature persists
};

// The returned planner references `env`, which must outlive it.
std::unique_ptr<PlannerHandle> make_planner(const Preset& preset, Algo algo,
                                            const EnvironmentModel& env);

// Named benchmark fixtures, constructible by every tool and test.
std::vector<std::string> known_envs();
std::unique_ptr<EnvironmentModel> make_env(const std::string& name);

// Both grids include their endpoints exactly; log_grid is geometric and
// requires lo > 0.  n must be at least 1 (a 1-point grid is just {lo}).
std::vector<double> linear_grid(double lo, double hi, int n);
std::vector<double> log_grid(double lo, double hi, int n);

// Affine rescale so the random baseline maps to 0 and the oracle to 1.
// Throws unless reference_oracle > reference_random.
double normalized_score(double raw, double reference_random, double reference_oracle);

// Mean over fixtures of the population variance of scores across settings;
// scores[fixture][setting] must be rectangular and non-empty.
double robustness_metric(const std::vector<std::vector<double>>& scores);

// Mean undiscounted return of the uniform-random policy over `episodes`
// episodes of at most max_steps steps.
double measure_random_reference(const EnvironmentModel& env, int episodes, int max_steps,
                                std::uint64_t seed);

// Undiscounted optimal return from the initial state within max_steps steps,
// by backward induction.
double oracle_reference(const EnvironmentModel& env, int max_steps);

struct ExperimentConfig {
  Algo algo = Algo::ants_s;
  std::string env_name = "chain8";
  int seeds = 5;
  int episodes = 10;
  int max_steps = 8;
  int n_passes = 100;
  int depth_limit = 12;
  double gamma = 0.99;
  std::uint64_t base_seed = 0;
  bool trace_temperature = false;
};

// `seed` is the 0-based seed index within the run, not the raw RNG seed.
struct EpisodeRow {
  std::uint64_t seed = 0;
  int episode = 0;
  double ret = 0.0;
  int steps = 0;
  double mean_tau = 0.0;  // mean over steps of the post-planning temperature
};

struct TraceRow {
  std::uint64_t seed = 0;
  int episode = 0;
  int step = 0;
  double tau = 0.0;
};

struct ExperimentResult {
  std::vector<EpisodeRow> episodes;
  std::vector<TraceRow> trace;  // empty unless trace_temperature
};

void validate(const ExperimentConfig& cfg);

// Runs seeds x episodes planning episodes.  Within a seed the planner state
// (smoothed temperature) carries across episodes; the tree is dropped between
// them.  Fully deterministic in the config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

void write_episode_csv(std::ostream& out, const std::vector<EpisodeRow>& rows);
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
void write_bandit_csv(std::ostream& out, const std::vector<CheckpointRow>& rows);

// Parses the exact episode CSV format written above; throws std::runtime_error
// on a wrong header or malformed row.
std::vector<EpisodeRow> read_episode_csv(std::istream& in);

enum class SweepParam {
  entropy_target,  // adaptation target; requires an adaptive configuration
  temperature,     // fixed operating temperature with adaptation disabled
};

std::string to_string(SweepParam param);

struct SweepConfig {
  Algo algo = Algo::ants_s;
  SweepParam param = SweepParam::entropy_target;
  std::vector<std::string> fixtures;
  std::vector<double> grid;
  int seeds = 3;
  int episodes = 5;
  int max_steps = 8;
  int n_passes = 100;
  int depth_limit = 12;
  double gamma = 0.99;
  std::uint64_t base_seed = 0;
  int threads = 1;
};

struct SweepResult {
  std::vector<std::string> fixtures;
  SweepParam param = SweepParam::entropy_target;
  std::vector<double> grid;
  std::vector<std::vector<double>> raw_mean;    // [fixture][grid point]
  std::vector<std::vector<double>> normalized;  // [fixture][grid point]
  std::vector<double> reference_random;         // [fixture]
  std::vector<double> reference_oracle;         // [fixture]
};

void validate(const SweepConfig& cfg);

// Evaluates every (fixture, grid point) cell with a worker pool.  Cell RNG
// streams are derived from (base_seed, cell, seed) alone, so results are
// independent of the thread count.
SweepResult sweep(const SweepConfig& cfg);

void write_sweep_csv(std::ostream& out, const SweepResult& res);

struct ReportRow {
  std::string file;
  std::size_t rows = 0;
  double mean_return = 0.0;
  double std_return = 0.0;  // population standard deviation
  double mean_steps = 0.0;
  double mean_tau = 0.0;
};

ReportRow summarize_episodes(const std::string& file, const std::vector<EpisodeRow>& rows);

// Reads each episode CSV and summarizes it; an unreadable or malformed file
// throws std::runtime_error.
std::vector<ReportRow> report_files(const std::vector<std::string>& paths);

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace ants
