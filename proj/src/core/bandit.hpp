#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ants {

enum class ScheduleKind { constant, log_decay };

// Temperature at step t: `tau` for the constant schedule, tau + C/ln(t+1) for
// the decaying one.  Requires t >= 1, C >= 0, and tau >= 1e-3 so the schedule
// never drops below the floor.
double tau_schedule(ScheduleKind kind, double tau, double decay_c, double t);

// Exploration mixing weight min(1, K / ln(t+1)); clamped to pure uniform
// sampling until ln(t+1) exceeds K.
double e2w_lambda(std::size_t arms, long long t);

// One multi-armed trial of exponential-weight sampling toward the softmax of
// the true means at the limit temperature.  counts/emp_means carry the running
// per-arm state and must be sized like `means` (run_trial initializes them).
struct BanditTrial {
  std::vector<double> means;
  double sigma = 0.1;
  double tau = 0.1;
  ScheduleKind schedule = ScheduleKind::constant;
  double decay_c = 0.0;
  long long horizon = 100000;
  std::uint64_t seed = 0;
  std::vector<long long> counts;
  std::vector<double> emp_means;
};

void validate(const BanditTrial& trial);

// Sampling distribution used at step t: the softmax of the empirical means at
// the scheduled temperature, mixed with lambda_t of uniform mass.
std::vector<double> e2w_probs(const BanditTrial& trial, long long t);

// Draws one arm from e2w_probs, pulls it (Gaussian reward), and folds the
// reward into the running mean.  Consumes one uniform and one Gaussian draw.
int e2w_step(BanditTrial& trial, long long t, std::mt19937_64& gen);

// Occupation/greedy statistics logged at the checkpoint steps that fit the
// horizon.  gap = max_a |N_t(a) - t * f_tau(true means)(a)|; greedy_correct
// compares the argmax of the softmax of empirical means (at the limit
// temperature) against the best true mean.
struct CheckpointRow {
  std::uint64_t seed = 0;
  long long t = 0;
  double gap = 0.0;
  bool greedy_correct = false;
  double tau_t = 0.0;
};

struct TrialLog {
  std::vector<CheckpointRow> rows;
};

const std::vector<long long>& bandit_checkpoints();

TrialLog run_trial(BanditTrial trial);

}  // namespace ants
